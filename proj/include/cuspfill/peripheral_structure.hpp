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

#ifndef CUSPFILL_PERIPHERAL_STRUCTURE_HPP_
#define CUSPFILL_PERIPHERAL_STRUCTURE_HPP_

#include <string>
#include <vector>

#include "cuspfill/subgroup_graph.hpp"
#include "cuspfill/word.hpp"

namespace cuspfill {

/// A peripheral subgroup together with the generators used to measure it
/// (the S cap P_i of a compatible generating set).
struct Peripheral {
  SubgroupGraph group;
  std::vector<Word> generators;

  /// Throws MalformedInput when gens is empty or contains the identity.
  static Peripheral from_generators(int rank, std::vector<Word> gens);
  bool is_cyclic() const { return group.rank() == 1; }
};

struct PeripheralStructure {
  int rank = 1;
  std::vector<Peripheral> peripherals;

  std::size_t size() const { return peripherals.size(); }
  /// Throws StructuralError naming the first pair (i, j), i < j, of
  /// conjugate peripherals.
  void check_pairwise_nonconjugate() const;
  std::string to_string() const;
};

}  // namespace cuspfill

#endif  // CUSPFILL_PERIPHERAL_STRUCTURE_HPP_
