// Copyright 2026 The cuspfill Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Slow, independent reference implementations used by the test suites.
// None of these call into the library beyond Word arithmetic.

#ifndef CUSPFILL_TESTS_ORACLES_HPP_
#define CUSPFILL_TESTS_ORACLES_HPP_

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "cuspfill/word.hpp"

namespace oracle {

// Words of length <= 20 over rank <= 2 packed into 64 bits.
inline std::uint64_t pack(const cuspfill::Word& w) {
  std::uint64_t key = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    key |= static_cast<std::uint64_t>(w[i].code) << (8 + 2 * i);
  }
  return key;
}

// Elements of <gens> reachable from the identity by right multiplication
// with generators and their inverses, never leaving the ball of radius
// `cap`.  Every element whose shortest such walk stays inside the cap is
// found, so with cap generous relative to the generator lengths this is
// the subgroup's intersection with the ball it is queried on.
class SubgroupBall {
 public:
  SubgroupBall(int rank, const std::vector<cuspfill::Word>& gens, std::size_t cap) {
    std::vector<cuspfill::Word> steps;
    for (const auto& g : gens) {
      if (g.empty()) continue;
      steps.push_back(g);
      steps.push_back(invert(g));
    }
    std::deque<cuspfill::Word> queue;
    queue.push_back(cuspfill::Word(rank));
    seen_.insert(pack(queue.front()));
    while (!queue.empty()) {
      auto w = queue.front();
      queue.pop_front();
      for (const auto& s : steps) {
        auto next = w * s;
        if (next.size() <= cap && seen_.insert(pack(next)).second) {
          queue.push_back(next);
        }
      }
    }
  }
  bool contains(const cuspfill::Word& w) const { return seen_.count(pack(w)) > 0; }
  std::size_t size() const { return seen_.size(); }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

// Same closure, but in a quotient whose elements are identified by a
// canonical normal form `nf` (a callable Word -> Word).
template <class NormalForm>
std::unordered_set<std::uint64_t> quotient_subgroup_ball(int rank,
                                                         const std::vector<cuspfill::Word>& gens,
                                                         std::size_t cap, NormalForm nf) {
  std::unordered_set<std::uint64_t> seen;
  std::deque<cuspfill::Word> queue{cuspfill::Word(rank)};
  seen.insert(pack(queue.front()));
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      for (const auto& s : {g, invert(g)}) {
        auto next = nf(w * s);
        if (next.size() <= cap && seen.insert(pack(next)).second) queue.push_back(next);
      }
    }
  }
  return seen;
}

}  // namespace oracle

#endif  // CUSPFILL_TESTS_ORACLES_HPP_
