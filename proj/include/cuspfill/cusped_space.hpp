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

#ifndef CUSPFILL_CUSPED_SPACE_HPP_
#define CUSPFILL_CUSPED_SPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuspfill/filling.hpp"
#include "cuspfill/peripheral.hpp"
#include "cuspfill/peripheral_structure.hpp"
#include "cuspfill/subgroup_graph.hpp"
#include "cuspfill/word.hpp"

namespace cuspfill {

// How group elements are compared.  Free groups and FREE_PRODUCT quotients
// have canonical forms; SMALL_CANCELLATION quotients fall back to pairwise
// word-problem calls.
class GroupModel {
 public:
  static GroupModel free_group(int rank);
  static GroupModel quotient(const QuotientPresentation& q);

  int rank() const { return rank_; }
  bool is_quotient() const { return q_.has_value(); }
  const QuotientPresentation* presentation() const { return q_ ? &*q_ : nullptr; }
  bool has_canonical_forms() const;
  Word canonical(const Word& w) const;  // only meaningful with canonical forms
  bool equal(const Word& u, const Word& v) const;
  std::string to_string() const;

 private:
  int rank_ = 1;
  std::optional<QuotientPresentation> q_;
};

enum class DistanceTag { kTrusted, kUpperBound };
std::string to_string(DistanceTag t);

class TruncatedCuspedSpace {
 public:
  using Id = std::int32_t;

  struct Coset {
    std::size_t peripheral = 0;
    Word rep;                          // ShortLex-least element in the ball
    std::vector<int> elements;         // ball element indices, ascending
    std::vector<std::vector<int>> dist;  // distances in the induced coset subgraph, -1 if apart
  };

  // element >= 0 always; coset = -1 and depth = 0 for Cayley vertices.
  struct VertexInfo {
    int element = 0;
    int coset = -1;
    int depth = 0;
  };

  // Ball of radius R about the identity.
  static TruncatedCuspedSpace build(const GroupModel& model, const PeripheralStructure& p,
                                    std::size_t R, int D);
  // Elements within Cayley distance r of some prefix of a center word.  The
  // ball is the tube about the identity.
  static TruncatedCuspedSpace build_tube(const GroupModel& model, const PeripheralStructure& p,
                                         const std::vector<Word>& centers, std::size_t r, int D);

  const GroupModel& model() const { return model_; }
  const PeripheralStructure& structure() const { return structure_; }
  std::size_t radius() const { return R_; }
  int max_depth() const { return D_; }
  bool exact_cosets() const { return exact_cosets_; }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const;
  std::size_t num_elements() const { return elements_.size(); }
  const std::vector<Id>& neighbors(Id v) const { return adj_.at(static_cast<std::size_t>(v)); }

  const Word& element(int e) const { return elements_.at(static_cast<std::size_t>(e)); }
  // Cayley distance from the seed set; word length for balls.
  int element_length(int e) const { return level_.at(static_cast<std::size_t>(e)); }
  std::optional<int> find_element(const Word& w) const;

  const std::vector<Coset>& cosets() const { return cosets_; }
  std::optional<int> coset_of(std::size_t peripheral, int element) const;

  VertexInfo info(Id v) const;
  Id group_vertex(int element) const { return element; }
  std::optional<Id> horoball_vertex(int coset, int element, int depth) const;
  std::string vertex_name(Id v) const;

  bool on_boundary(Id v) const { return boundary_.at(static_cast<std::size_t>(v)) != 0; }
  bool interior(Id v) const { return interior_.at(static_cast<std::size_t>(v)) != 0; }

  std::vector<int> distances_from(Id src) const;
  // BFS restricted to interior vertices (-1 elsewhere and when unreachable).
  std::vector<int> interior_distances_from(Id src) const;

  int distance(Id p, Id q) const;
  std::vector<Id> geodesic(Id p, Id q) const;

  struct Query {
    int distance = 0;
    DistanceTag tag = DistanceTag::kTrusted;
  };
  Query query(Id p, Id q) const;

  void write_edge_list(std::ostream& out) const;

 private:
  void check(Id v) const;

  GroupModel model_;
  PeripheralStructure structure_;
  std::size_t R_ = 0;
  int D_ = 1;
  bool exact_cosets_ = true;

  std::vector<Word> elements_;
  std::vector<int> level_;
  std::map<Word, int> index_;  // canonical form -> element (canonical models only)
  std::vector<Coset> cosets_;
  std::vector<std::vector<int>> element_coset_;  // [peripheral][element]
  std::vector<Id> horo_offset_;
  std::vector<std::vector<Id>> adj_;
  std::vector<char> boundary_;
  std::vector<char> interior_;
};

// Four-point defect estimate.  Values are half-integers, stored doubled.
struct DeltaOptions {
  bool sample = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool trusted_only = false;
  unsigned threads = 1;
};

struct DeltaEstimate {
  long twice_delta = 0;
  std::size_t quadruples = 0;  // quadruples examined (after the trust filter)
  bool exhaustive = true;
  double value() const { return static_cast<double>(twice_delta) / 2.0; }
  std::string to_string() const;
};

// Exhaustive scans above this many vertices are refused; use sampling.
inline constexpr std::size_t kExhaustiveDeltaLimit = 2000;

DeltaEstimate estimate_delta(const TruncatedCuspedSpace& x, const DeltaOptions& opt);
// Same scan on an explicit distance matrix (row-major, n x n); `trusted` may be empty.
DeltaEstimate estimate_delta(std::size_t n, const std::vector<std::uint16_t>& dist,
                             const std::vector<char>& trusted, const DeltaOptions& opt);

// Cusped space of H over the free group on its Stallings basis, with the
// core entries (rewritten in that basis) as peripherals.
TruncatedCuspedSpace build_subgroup_space(const SubgroupGraph& h, const MalnormalCore& core,
                                          std::size_t R, int D);

// Vertex map X_H -> X_G.  Holds pointers; both spaces must outlive it.
struct LipschitzMap {
  const TruncatedCuspedSpace* domain = nullptr;
  const TruncatedCuspedSpace* codomain = nullptr;
  std::vector<TruncatedCuspedSpace::Id> image;  // -1 where the image leaves the truncation
  std::vector<Word> basis;                      // phi(t) for the free generators t of H
  std::vector<Word> corrections;                // c_i per core entry
  std::vector<std::size_t> target;              // j_i per core entry
  long a = 0;
  long b = 0;
  long alpha = 0;
};

LipschitzMap build_check_map(const SubgroupGraph& h, const MalnormalCore& core,
                             const InducedStructure& induced, const TruncatedCuspedSpace& xh,
                             const TruncatedCuspedSpace& xg);

struct LipschitzResult {
  bool ok = true;
  long worst = 0;        // largest image distance over checked edges (capped)
  std::size_t edges = 0;  // domain edges with both ends mapped
};
LipschitzResult verify_lipschitz(const LipschitzMap& map);

long measure_quasiconvexity(const TruncatedCuspedSpace& x,
                            const std::vector<TruncatedCuspedSpace::Id>& y,
                            const std::vector<std::pair<TruncatedCuspedSpace::Id,
                                                        TruncatedCuspedSpace::Id>>& pairs);

// Largest distance from `y` to a vertex of the listed horoballs whose base
// element has length at most `max_length`.  -1 if some such vertex cannot reach y.
// |g|_X: distance from 1 to g in the tube of radius r about g's prefixes.
TruncatedCuspedSpace::Query cusped_length(const GroupModel& model, const PeripheralStructure& p,
                                          const Word& g, std::size_t r, int D);

long horoball_coverage(const TruncatedCuspedSpace& x,
                       const std::vector<TruncatedCuspedSpace::Id>& y,
                       const std::vector<int>& cosets, int max_length);

}  // namespace cuspfill

#endif  // CUSPFILL_CUSPED_SPACE_HPP_
