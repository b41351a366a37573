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

#include "cuspfill/horoball.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cuspfill/errors.hpp"

namespace cuspfill {

BaseGraph::BaseGraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges)
    : adj_(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n) {
      throw MalformedInput("edge endpoint out of range");
    }
    if (u == v) {
      throw MalformedInput("base graphs must not have loops");
    }
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
}

BaseGraph BaseGraph::path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  }
  return BaseGraph(n, edges);
}

BaseGraph BaseGraph::cycle(std::size_t n) {
  auto edges = std::vector<std::pair<Vertex, Vertex>>{};
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  }
  return BaseGraph(n, edges);
}

BaseGraph BaseGraph::read_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long u = 0;
    long v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v) || u < 0 || v < 0) {
      throw MalformedInput("bad edge line: " + line);
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    n = std::max(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  return BaseGraph(n, edges);
}

std::size_t BaseGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& nb : adj_) twice += nb.size();
  return twice / 2;
}

std::vector<int> BaseGraph::distances_from(Vertex v) const {
  std::vector<int> dist(adj_.size(), -1);
  std::deque<Vertex> queue{v};
  dist[static_cast<std::size_t>(v)] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto w : adj_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<BaseGraph::Vertex> BaseGraph::geodesic(Vertex v, Vertex w) const {
  auto dist = distances_from(w);
  if (dist[static_cast<std::size_t>(v)] < 0) return {};
  std::vector<Vertex> path{v};
  while (path.back() != w) {
    auto cur = path.back();
    for (auto x : adj_[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(x)] == dist[static_cast<std::size_t>(cur)] - 1) {
        path.push_back(x);
        break;
      }
    }
  }
  return path;
}

int BaseGraph::diameter() const {
  int best = 0;
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    auto d = distances_from(static_cast<Vertex>(v));
    best = std::max(best, *std::max_element(d.begin(), d.end()));
  }
  return best;
}

int default_horoball_depth(const BaseGraph& base) {
  int diam = base.diameter();
  int lg = 0;
  while ((1 << lg) < diam) ++lg;
  return lg + 2;
}

TruncatedHoroball::TruncatedHoroball(BaseGraph base, int max_depth)
    : base_(std::move(base)), max_depth_(max_depth) {
  if (base_.num_vertices() == 0) {
    throw MalformedInput("horoball over an empty base graph");
  }
  if (max_depth_ < 1) {
    throw PreconditionError("horoball depth must be at least 1");
  }
  const std::size_t n = base_.num_vertices();
  base_dist_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    base_dist_.push_back(base_.distances_from(static_cast<BaseGraph::Vertex>(v)));
  }
  adj_.resize(num_vertices());
  for (int k = 0; k <= max_depth_; ++k) {
    // Beyond the diameter every depth is complete; cap the span so the
    // shift never overflows.
    const long span = k >= 30 ? std::numeric_limits<int>::max() : (1L << k);
    for (std::size_t v = 0; v < n; ++v) {
      auto& nb = adj_[static_cast<std::size_t>(id({static_cast<BaseGraph::Vertex>(v), k}))];
      if (k > 0) nb.push_back(id({static_cast<BaseGraph::Vertex>(v), k - 1}));
      if (k == 0) {
        for (auto w : base_.neighbors(static_cast<BaseGraph::Vertex>(v))) {
          nb.push_back(id({w, 0}));
        }
      } else {
        for (std::size_t w = 0; w < n; ++w) {
          int d = base_dist_[v][w];
          if (d > 0 && d <= span) nb.push_back(id({static_cast<BaseGraph::Vertex>(w), k}));
        }
      }
      if (k < max_depth_) nb.push_back(id({static_cast<BaseGraph::Vertex>(v), k + 1}));
      std::sort(nb.begin(), nb.end());
    }
  }
}

std::size_t TruncatedHoroball::num_edges() const {
  std::size_t twice = 0;
  for (const auto& nb : adj_) twice += nb.size();
  return twice / 2;
}

TruncatedHoroball::Id TruncatedHoroball::id(HoroVertex p) const {
  return static_cast<Id>(static_cast<std::size_t>(p.depth) * base_.num_vertices() +
                         static_cast<std::size_t>(p.v));
}

HoroVertex TruncatedHoroball::vertex(Id i) const {
  const auto n = static_cast<Id>(base_.num_vertices());
  return {i % n, i / n};
}

int TruncatedHoroball::base_distance(BaseGraph::Vertex v, BaseGraph::Vertex w) const {
  return base_dist_.at(static_cast<std::size_t>(v)).at(static_cast<std::size_t>(w));
}

void TruncatedHoroball::check(HoroVertex p) const {
  if (p.v < 0 || static_cast<std::size_t>(p.v) >= base_.num_vertices() || p.depth < 0 ||
      p.depth > max_depth_) {
    throw PreconditionError("vertex (" + std::to_string(p.v) + "," + std::to_string(p.depth) +
                            ") is not in the horoball");
  }
}

std::vector<int> TruncatedHoroball::bfs(Id src) const {
  std::vector<int> dist(adj_.size(), -1);
  std::deque<Id> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto w : adj_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int TruncatedHoroball::distance(HoroVertex p, HoroVertex q) const {
  check(p);
  check(q);
  return bfs(id(p))[static_cast<std::size_t>(id(q))];
}

std::vector<HoroVertex> TruncatedHoroball::geodesic(HoroVertex p, HoroVertex q) const {
  check(p);
  check(q);
  auto dist = bfs(id(q));
  if (dist[static_cast<std::size_t>(id(p))] < 0) return {};
  std::vector<HoroVertex> path{p};
  Id cur = id(p);
  while (cur != id(q)) {
    for (auto w : adj_[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(cur)] - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(vertex(cur));
  }
  return path;
}

TruncatedHoroball::RegularGeodesic TruncatedHoroball::regular_geodesic(HoroVertex p,
                                                                        HoroVertex q) const {
  check(p);
  check(q);
  const int d = base_distance(p.v, q.v);
  if (d < 0) {
    throw PreconditionError("endpoints lie over different components of the base");
  }
  // Horizontal hops needed at depth m.
  auto hops = [d](int m) -> long {
    if (d == 0) return 0;
    if (m == 0) return d;
    if (m >= 30) return 1;
    long span = 1L << m;
    return (d + span - 1) / span;
  };
  int best_m = 0;
  long best = std::numeric_limits<long>::max();
  for (int m = 0; m <= max_depth_; ++m) {
    long cost = std::abs(m - p.depth) + std::abs(m - q.depth) + hops(m);
    if (cost <= best) {  // ties: deepest, so the horizontal part is shortest
      best = cost;
      best_m = m;
    }
  }
  RegularGeodesic out;
  auto& path = out.path;
  path.push_back(p);
  for (int k = p.depth; k != best_m; k += (best_m > k ? 1 : -1)) {
    path.push_back({p.v, k + (best_m > k ? 1 : -1)});
  }
  if (d > 0) {
    auto line = base_.geodesic(p.v, q.v);
    const std::size_t step = best_m == 0 ? 1 : (best_m >= 30 ? line.size() : (std::size_t{1} << best_m));
    std::size_t pos = 0;
    while (pos + 1 < line.size()) {
      pos = std::min(pos + step, line.size() - 1);
      path.push_back({line[pos], best_m});
    }
  }
  for (int k = best_m; k != q.depth; k += (q.depth > k ? 1 : -1)) {
    path.push_back({q.v, k + (q.depth > k ? 1 : -1)});
  }
  out.gap = static_cast<int>(out.length()) - distance(p, q);
  return out;
}

void TruncatedHoroball::write_edge_list(std::ostream& out) const {
  for (std::size_t i = 0; i < adj_.size(); ++i) {
    auto p = vertex(static_cast<Id>(i));
    for (auto j : adj_[i]) {
      if (static_cast<std::size_t>(j) <= i) continue;
      auto q = vertex(j);
      out << '(' << p.v << ',' << p.depth << ") (" << q.v << ',' << q.depth << ")\n";
    }
  }
}

}  // namespace cuspfill
