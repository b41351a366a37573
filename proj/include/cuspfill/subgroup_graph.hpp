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

// Folded Stallings graphs of finitely generated subgroups of a free group.
//
// A SubgroupGraph is always folded, trimmed to its core (every vertex other
// than the basepoint lies on a reduced basepoint loop) and numbered
// canonically: vertex 0 is the basepoint and the rest are numbered in the
// order a breadth-first search visits them, trying letters in ShortLex
// order.  Two graphs therefore compare equal iff they represent the same
// subgroup.

#ifndef CUSPFILL_SUBGROUP_GRAPH_HPP_
#define CUSPFILL_SUBGROUP_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cuspfill/word.hpp"

namespace cuspfill {

/// nullopt means infinite.
using Index = std::optional<std::size_t>;

/// Search results that are only exact up to a word-length bound.
struct Exactness {
  bool exact = true;
  std::size_t bound = 0;

  static Exactness exact_result() { return {true, 0}; }
  static Exactness bounded(std::size_t L) { return {false, L}; }
  std::string to_string() const;
  bool operator==(const Exactness&) const = default;
};

class SubgroupGraph {
 public:
  using Vertex = std::int32_t;
  static constexpr Vertex kNone = -1;

  /// Trivial subgroup of F(rank).
  explicit SubgroupGraph(int rank = 1);

  static SubgroupGraph from_generators(int rank, std::span<const Word> gens);
  static SubgroupGraph from_generators(int rank, std::initializer_list<Word> gens) {
    return from_generators(rank, std::span<const Word>(gens.begin(), gens.size()));
  }

  int ambient_rank() const { return rank_; }
  std::size_t num_vertices() const { return out_.size() / stride(); }
  /// Number of (positively labelled) edges.
  std::size_t num_edges() const;
  static constexpr Vertex basepoint() { return 0; }

  /// Target of the edge labelled x leaving v, or kNone.
  Vertex follow(Vertex v, Letter x) const;
  /// End vertex of the path labelled w from `start`, or kNone.
  Vertex read(Vertex start, const Word& w) const;
  /// Length of the longest prefix of w readable from `start`, and its end.
  std::pair<std::size_t, Vertex> read_prefix(Vertex start, const Word& w) const;

  bool contains(const Word& w) const;

  /// E - V + 1.
  std::size_t rank() const;
  bool is_trivial() const { return num_edges() == 0; }

  /// Index in the ambient free group; nullopt when infinite.
  Index index() const;

  /// Free basis read off the canonical spanning tree, one generator per
  /// non-tree edge, in edge order.
  std::vector<Word> generators() const;

  /// Rewrites w (which must lie in the subgroup) in the free basis returned
  /// by generators(); the result has rank == rank().  Throws
  /// PreconditionError if w is not in the subgroup.
  Word rewrite_in_basis(const Word& w) const;

  /// ShortLex-least reduced path label from v to the basepoint.
  Word path_to_basepoint(Vertex v) const;
  /// ShortLex-least reduced path label from the basepoint to v.
  Word path_from_basepoint(Vertex v) const;

  /// Subgraph remaining after also trimming the basepoint's hanging path:
  /// the part every cyclically reduced conjugate reads in.  Returns its
  /// vertex set.
  std::vector<Vertex> cyclic_core_vertices() const;

  bool operator==(const SubgroupGraph&) const = default;

  std::string to_string() const;

  // Used by the folding machinery in the implementation file.
  struct Builder;

 private:
  std::size_t stride() const { return static_cast<std::size_t>(rank_); }

  int rank_;
  // out_[v * rank + g]: target of the g-edge leaving v; in_ likewise.
  std::vector<Vertex> out_;
  std::vector<Vertex> in_;
};

/// Pullback of A and B at the basepoint pair, trimmed to the core.
SubgroupGraph intersect(const SubgroupGraph& a, const SubgroupGraph& b);

/// H^g = g H g^-1.
SubgroupGraph conjugate(const SubgroupGraph& h, const Word& g);

/// g1 H == g2 H.
bool coset_equal(const Word& g1, const Word& g2, const SubgroupGraph& h);

/// ShortLex-least element of the left coset g H.
Word canonical_coset_rep(const SubgroupGraph& h, const Word& g);

/// K <= H is assumed; finite index of K in H (nullopt when infinite).
/// Throws PreconditionError when K is not contained in H.
Index relative_index(const SubgroupGraph& k, const SubgroupGraph& h);

bool is_subgroup_of(const SubgroupGraph& k, const SubgroupGraph& h);

/// Exact conjugacy of subgroups of F: isomorphism of cyclic cores.
bool are_conjugate(const SubgroupGraph& a, const SubgroupGraph& b);

/// Returns some s with x in s A s^-1, or nullopt when x is not conjugate
/// into A.  The identity is conjugate into every subgroup.
std::optional<Word> conjugator_into(const Word& x, const SubgroupGraph& a);

struct Commensurator {
  SubgroupGraph group;
  Exactness exactness;
};

/// Default conjugator bound for the bounded commensurator search.
std::size_t default_commensurator_bound(const SubgroupGraph& h);

/// Commensurator of a nontrivial subgroup H inside `ambient` (the whole
/// free group when ambient is nullptr).  Cyclic H is handled exactly via
/// roots; otherwise the subgroup generated by H and every g in the ambient
/// group with |g| <= bound and H cap H^g of finite index in both H and H^g.
/// Throws PreconditionError for trivial H.
Commensurator commensurator(const SubgroupGraph& h, std::size_t bound,
                            const SubgroupGraph* ambient = nullptr);

/// Generators in ASCII (standard alphabet), e.g. "aa,baaaB".
std::string generators_string(const SubgroupGraph& h);

}  // namespace cuspfill

#endif  // CUSPFILL_SUBGROUP_GRAPH_HPP_
