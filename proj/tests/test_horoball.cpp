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

#include <sstream>

#include "cuspfill/errors.hpp"
#include "cuspfill/horoball.hpp"
#include "doctest.h"

using cuspfill::BaseGraph;
using cuspfill::HoroVertex;
using cuspfill::TruncatedHoroball;

namespace {

// Edge count straight from the definition, over all unordered vertex pairs.
std::size_t count_edges_by_definition(const BaseGraph& g, int D) {
  const auto n = g.num_vertices();
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto dist = g.distances_from(static_cast<int>(v));
    for (std::size_t w = v + 1; w < n; ++w) {
      if (dist[w] == 1) ++count;  // depth 0
      for (int k = 1; k <= D; ++k) {
        if (dist[w] > 0 && dist[w] <= (1 << k)) ++count;
      }
    }
  }
  return count + n * static_cast<std::size_t>(D);  // vertical
}

}  // namespace

TEST_CASE("build_horoball sizes") {
  TruncatedHoroball p2(BaseGraph::path(2), 1);
  CHECK(p2.num_vertices() == 4);
  CHECK(p2.num_edges() == 4);
  CHECK(p2.num_edges() == count_edges_by_definition(BaseGraph::path(2), 1));

  TruncatedHoroball ray(BaseGraph(1, {}), 3);
  CHECK(ray.num_vertices() == 4);
  CHECK(ray.num_edges() == 3);
  CHECK(ray.distance({0, 0}, {0, 3}) == 3);

  TruncatedHoroball c8(BaseGraph::cycle(8), 3);
  CHECK(c8.num_edges() == count_edges_by_definition(BaseGraph::cycle(8), 3));
  for (int v = 0; v < 8; ++v) {
    // complete at depth 3: 7 horizontal neighbours plus one vertical
    CHECK(c8.neighbors(c8.id({v, 3})).size() == 8);
  }
  for (int n : {5, 9, 17}) {
    for (int D : {1, 3, 5}) {
      TruncatedHoroball h(BaseGraph::path(static_cast<std::size_t>(n)), D);
      CHECK(h.num_edges() == count_edges_by_definition(BaseGraph::path(static_cast<std::size_t>(n)), D));
    }
  }
  CHECK_THROWS_AS(TruncatedHoroball(BaseGraph::path(3), 0), cuspfill::PreconditionError);
  CHECK_THROWS_AS(TruncatedHoroball(BaseGraph(), 2), cuspfill::MalformedInput);
}

TEST_CASE("horoball distances") {
  TruncatedHoroball h(BaseGraph::path(9), 4);
  CHECK(h.distance({0, 2}, {4, 2}) == 1);
  CHECK(h.distance({0, 0}, {8, 0}) == 6);
  CHECK(h.distance({3, 0}, {3, 3}) == 3);
  CHECK_THROWS_AS(h.distance({9, 0}, {0, 0}), cuspfill::PreconditionError);
  auto g = h.geodesic({0, 0}, {8, 0});
  REQUIRE(g.size() == 7);
  int deepest = 0;
  for (auto p : g) deepest = std::max(deepest, p.depth);
  // both depth 1 (1 + 4 + 1) and depth 2 (2 + 2 + 2) realise 6; smallest ids win
  CHECK(deepest == 1);
  CHECK(h.geodesic({2, 0}, {2, 2}) == std::vector<HoroVertex>{{2, 0}, {2, 1}, {2, 2}});
  CHECK(h.geodesic({1, 1}, {1, 1}) == std::vector<HoroVertex>{{1, 1}});
}

TEST_CASE("regular geodesics") {
  TruncatedHoroball h(BaseGraph::path(9), 4);
  auto r1 = h.regular_geodesic({0, 0}, {0, 3});
  CHECK(r1.length() == 3);
  CHECK(r1.gap == 0);
  auto r2 = h.regular_geodesic({0, 0}, {8, 0});
  CHECK(r2.gap == 0);
  CHECK(r2.path == std::vector<HoroVertex>{{0, 0}, {0, 1}, {0, 2}, {4, 2}, {8, 2}, {8, 1}, {8, 0}});
  auto r3 = h.regular_geodesic({0, 1}, {2, 1});
  CHECK(r3.path == std::vector<HoroVertex>{{0, 1}, {2, 1}});
}

TEST_CASE("metric axioms and depth Lipschitz on P16, D = 6") {
  TruncatedHoroball h(BaseGraph::path(16), 6);
  const auto n = static_cast<int>(h.num_vertices());
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i)].push_back(h.distance(h.vertex(i), h.vertex(j)));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int dij = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      REQUIRE(dij == d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      REQUIRE(std::abs(h.vertex(i).depth - h.vertex(j).depth) <= dij);
    }
  }
}

TEST_CASE("edge list round trip") {
  std::istringstream in("# a triangle\n0 1\n1 2\n2 0\n");
  auto g = BaseGraph::read_edge_list(in);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  std::ostringstream out;
  TruncatedHoroball(g, 1).write_edge_list(out);
  CHECK(out.str().find("(0,0) (1,0)") != std::string::npos);
  std::istringstream bad("0 0\n");
  CHECK_THROWS_AS(BaseGraph::read_edge_list(bad), cuspfill::MalformedInput);
  CHECK(cuspfill::default_horoball_depth(BaseGraph::path(17)) == 6);
}
