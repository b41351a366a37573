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

#ifndef CUSPFILL_SRC_FOLDING_HPP_
#define CUSPFILL_SRC_FOLDING_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "cuspfill/word.hpp"

namespace cuspfill {

inline constexpr int kNoVertex = -1;

// Mutable graph with union-find vertex identification.  Edges are kept
// consistent lazily: targets may be stale vertex ids and are resolved with
// find().  Every identification forced by folding is queued and processed
// until the graph is deterministic in both directions.
struct FoldingGraph {
  int rank;
  std::vector<int> parent;
  std::vector<int> weight;
  std::vector<int> out;
  std::vector<int> in;
  std::vector<std::pair<int, int>> pending;

  explicit FoldingGraph(int r) : rank(r) {}

  std::size_t at(int v, int g) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(rank) +
           static_cast<std::size_t>(g);
  }

  int add_vertex() {
    parent.push_back(static_cast<int>(parent.size()));
    weight.push_back(1);
    out.resize(out.size() + static_cast<std::size_t>(rank), kNoVertex);
    in.resize(in.size() + static_cast<std::size_t>(rank), kNoVertex);
    return parent.back();
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void add_edge(int u, int g, int v) {
    u = find(u);
    v = find(v);
    if (out[at(u, g)] == kNoVertex) {
      out[at(u, g)] = v;
    } else {
      pending.emplace_back(out[at(u, g)], v);
    }
    if (in[at(v, g)] == kNoVertex) {
      in[at(v, g)] = u;
    } else {
      pending.emplace_back(in[at(v, g)], u);
    }
    process();
  }

  void add_letter_edge(int u, Letter x, int v) {
    if (x.is_inverse()) {
      add_edge(v, x.generator(), u);
    } else {
      add_edge(u, x.generator(), v);
    }
  }

  void identify(int x, int y) {
    pending.emplace_back(x, y);
    process();
  }

  void process() {
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) {
        continue;
      }
      if (weight[x] < weight[y]) {
        std::swap(x, y);
      }
      parent[y] = x;
      weight[x] += weight[y];
      for (int g = 0; g < rank; ++g) {
        for (auto* side : {&out, &in}) {
          auto& mine = (*side)[at(x, g)];
          auto theirs = (*side)[at(y, g)];
          if (theirs == kNoVertex) {
            continue;
          }
          if (mine == kNoVertex) {
            mine = theirs;
          } else {
            pending.emplace_back(mine, theirs);
          }
        }
      }
    }
  }

};

}  // namespace cuspfill

#endif  // CUSPFILL_SRC_FOLDING_HPP_
