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

#include "cuspfill/peripheral_structure.hpp"

#include "cuspfill/errors.hpp"

namespace cuspfill {

Peripheral Peripheral::from_generators(int rank, std::vector<Word> gens) {
  if (gens.empty()) {
    throw MalformedInput("a peripheral subgroup needs at least one generator");
  }
  for (const auto& g : gens) {
    if (g.empty()) throw MalformedInput("peripheral generators must be nontrivial");
  }
  auto graph = SubgroupGraph::from_generators(rank, gens);
  return {std::move(graph), std::move(gens)};
}

void PeripheralStructure::check_pairwise_nonconjugate() const {
  for (std::size_t i = 0; i < peripherals.size(); ++i) {
    for (std::size_t j = i + 1; j < peripherals.size(); ++j) {
      if (are_conjugate(peripherals[i].group, peripherals[j].group)) {
        throw StructuralError("peripherals " + std::to_string(i) + " and " + std::to_string(j) +
                              " are conjugate");
      }
    }
  }
}

std::string PeripheralStructure::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < peripherals.size(); ++i) {
    if (i > 0) out += "; ";
    out += "<" + generators_string(peripherals[i].group) + ">";
  }
  return out + "}";
}

}  // namespace cuspfill
