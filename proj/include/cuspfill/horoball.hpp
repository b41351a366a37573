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

// Combinatorial horoballs over a finite simple graph, truncated at a
// maximum depth.  Vertices are pairs (v, k); (v, k) -- (w, k) is an edge
// when k = 0 and v -- w in the base, or k > 0 and 0 < d(v, w) <= 2^k; and
// (v, k) -- (v, k + 1) is always an edge.

#ifndef CUSPFILL_HOROBALL_HPP_
#define CUSPFILL_HOROBALL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cuspfill {

class BaseGraph {
 public:
  using Vertex = std::int32_t;

  BaseGraph() = default;
  /// Throws MalformedInput on loops or out-of-range endpoints; duplicate
  /// edges are merged.
  BaseGraph(std::size_t num_vertices, const std::vector<std::pair<Vertex, Vertex>>& edges);

  static BaseGraph path(std::size_t n);
  static BaseGraph cycle(std::size_t n);
  /// "u v" per line, vertex ids are nonnegative integers; '#' starts a
  /// comment.
  static BaseGraph read_edge_list(std::istream& in);

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const;
  /// Sorted ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }

  /// Breadth-first distances from v (-1 when unreachable).
  std::vector<int> distances_from(Vertex v) const;
  /// Smallest-id-first shortest path from v to w; empty when unreachable.
  std::vector<Vertex> geodesic(Vertex v, Vertex w) const;
  /// Maximum finite distance.
  int diameter() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
};

struct HoroVertex {
  BaseGraph::Vertex v = 0;
  int depth = 0;
  auto operator<=>(const HoroVertex&) const = default;
};

/// ceil(log2(diameter)) + 2.
int default_horoball_depth(const BaseGraph& base);

class TruncatedHoroball {
 public:
  using Id = std::int32_t;

  /// Throws PreconditionError when D < 1 and MalformedInput on an empty base.
  TruncatedHoroball(BaseGraph base, int max_depth);

  const BaseGraph& base() const { return base_; }
  int max_depth() const { return max_depth_; }
  std::size_t num_vertices() const { return base_.num_vertices() * static_cast<std::size_t>(max_depth_ + 1); }
  std::size_t num_edges() const;

  Id id(HoroVertex p) const;
  HoroVertex vertex(Id id) const;
  /// Sorted ascending by id.
  const std::vector<Id>& neighbors(Id id) const { return adj_[static_cast<std::size_t>(id)]; }
  /// Base distance, precomputed.
  int base_distance(BaseGraph::Vertex v, BaseGraph::Vertex w) const;

  int distance(HoroVertex p, HoroVertex q) const;
  /// Breadth-first geodesic, choosing the smallest-id next vertex at every
  /// step.
  std::vector<HoroVertex> geodesic(HoroVertex p, HoroVertex q) const;

  struct RegularGeodesic {
    std::vector<HoroVertex> path;
    /// Path length minus the true distance; 0 when the regular path is a
    /// geodesic.
    int gap = 0;
    std::size_t length() const { return path.empty() ? 0 : path.size() - 1; }
  };
  /// Shortest path of the form vertical, horizontal (along the canonical
  /// base geodesic), vertical.
  RegularGeodesic regular_geodesic(HoroVertex p, HoroVertex q) const;

  /// "(v,k) (w,l)" per line, each edge once, in id order.
  void write_edge_list(std::ostream& out) const;

 private:
  void check(HoroVertex p) const;
  std::vector<int> bfs(Id src) const;

  BaseGraph base_;
  int max_depth_;
  std::vector<std::vector<int>> base_dist_;
  std::vector<std::vector<Id>> adj_;
};

}  // namespace cuspfill

#endif  // CUSPFILL_HOROBALL_HPP_
