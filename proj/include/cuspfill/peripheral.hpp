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

// Height, malnormal core and induced peripheral structure of a finitely
// generated subgroup H of a free group.  Conjugates are H^g = g H g^-1 and
// are essentially distinct when the cosets gH differ.  Every search runs
// over canonical coset representatives of length <= L, so results are
// exact relative to L.

#ifndef CUSPFILL_PERIPHERAL_HPP_
#define CUSPFILL_PERIPHERAL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cuspfill/filling.hpp"
#include "cuspfill/peripheral_structure.hpp"
#include "cuspfill/subgroup_graph.hpp"

namespace cuspfill {

struct HeightCertificate {
  std::size_t k = 0;
  std::vector<Word> conjugators;  // first is the identity
  Word witness;                   // nontrivial, in every H^g; empty when k = 0
  Exactness exactness;
};

/// Canonical coset representatives g (|g| <= L, g not in H) with H cap H^g
/// infinite, ShortLex ordered.
std::vector<Word> intersecting_cosets(const SubgroupGraph& h, std::size_t L);

HeightCertificate height(const SubgroupGraph& h, std::size_t L);

/// Replays a certificate from membership tests alone: conjugators pairwise
/// essentially distinct, first one trivial, witness nontrivial and in every
/// conjugate, k equal to the number of conjugators.
bool verify_height_certificate(const SubgroupGraph& h, const HeightCertificate& cert);

struct IntersectionClass {
  SubgroupGraph group;
  std::vector<Word> conjugators;
};

/// One representative per H-conjugacy class of intersections over
/// inclusion-maximal collections of essentially distinct conjugates (within
/// L), largest collections first.
std::vector<IntersectionClass> infinite_intersection_classes(const SubgroupGraph& h,
                                                             std::size_t L);

/// Whether subgroups A, B of H are conjugate by an element of H.
bool h_conjugate(const SubgroupGraph& h, const SubgroupGraph& a, const SubgroupGraph& b);
/// Some s in H with x in s A s^-1 (x in H, A <= H), or nullopt.
std::optional<Word> h_conjugator_into(const SubgroupGraph& h, const Word& x,
                                      const SubgroupGraph& a);

struct CoreEntry {
  SubgroupGraph group;
  Exactness exactness;
};

struct MalnormalCore {
  std::vector<CoreEntry> entries;
  std::string to_string() const;
};

MalnormalCore malnormal_core(const SubgroupGraph& h, std::size_t L);

struct InducedStructure {
  PeripheralStructure structure;
  std::vector<Exactness> exactness;  // per peripheral
  std::vector<std::size_t> target;   // core entry i -> peripheral j_i
  std::vector<Word> correction;      // c_i: D_i <= c_i P_{j_i} c_i^-1
};

/// ShortLex-least shortest c with every generator of D in c P c^-1, or
/// nullopt when D does not conjugate into P.
std::optional<Word> shortest_conjugator_into(const SubgroupGraph& d, const SubgroupGraph& p);

InducedStructure induced_peripheral_structure(const SubgroupGraph& h, const MalnormalCore& core,
                                              std::size_t L);

/// Coset tP_i (t a canonical representative, |t| <= L) with H cap t P_i t^-1
/// nontrivial.
struct PeripheralCoset {
  std::size_t peripheral = 0;
  Word t;
};
std::vector<PeripheralCoset> relevant_peripheral_cosets(const SubgroupGraph& h,
                                                        const PeripheralStructure& p,
                                                        std::size_t L);

struct HFillingWitness {
  std::size_t peripheral = 0;
  Word t;
  std::string reason;
};
struct HFillingResult {
  bool ok = true;
  std::vector<HFillingWitness> witnesses;
};

/// For every relevant coset tP_i: t N_i t^-1 must lie in H and inside some
/// H-conjugate of a core entry.
HFillingResult is_h_filling(const SubgroupGraph& h, const PeripheralStructure& p,
                            const FillingSpec& spec, const MalnormalCore& core, std::size_t L);
HFillingResult is_h_filling(const SubgroupGraph& h, const PeripheralStructure& p,
                            const FillingSpec& spec, const MalnormalCore& core,
                            const std::vector<PeripheralCoset>& cosets);

/// K_i = c_i N_{j_i} c_i^-1 cap D_i.
std::vector<KernelGraph> induced_filling_kernels(const MalnormalCore& core,
                                                 const InducedStructure& induced,
                                                 const FillingSpec& spec);

}  // namespace cuspfill

#endif  // CUSPFILL_PERIPHERAL_HPP_
