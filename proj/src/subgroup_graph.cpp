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

#include "cuspfill/subgroup_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "cuspfill/errors.hpp"
#include "folding.hpp"

namespace cuspfill {

std::string Exactness::to_string() const {
  return exact ? "exact" : "bounded(" + std::to_string(bound) + ")";
}

struct SubgroupGraph::Builder : FoldingGraph {
  using FoldingGraph::FoldingGraph;

  // Resolve, trim to the core relative to `base`, renumber canonically.
  SubgroupGraph finish(int base) {
    const int n = static_cast<int>(parent.size());
    base = find(base);
    std::vector<char> alive(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (find(v) == v) {
        alive[v] = 1;
        for (int g = 0; g < rank; ++g) {
          if (out[at(v, g)] != kNone) out[at(v, g)] = find(out[at(v, g)]);
          if (in[at(v, g)] != kNone) in[at(v, g)] = find(in[at(v, g)]);
        }
      }
    }
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      for (int g = 0; g < rank; ++g) {
        degree[v] += (out[at(v, g)] != kNone) + (in[at(v, g)] != kNone);
      }
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
      if (alive[v] && v != base && degree[v] <= 1) stack.push_back(v);
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (!alive[v]) continue;
      alive[v] = 0;
      for (int g = 0; g < rank; ++g) {
        if (auto w = out[at(v, g)]; w != kNone) {
          in[at(w, g)] = kNone;
          out[at(v, g)] = kNone;
          if (--degree[w] <= 1 && w != base && alive[w]) stack.push_back(w);
        }
        if (auto w = in[at(v, g)]; w != kNone) {
          out[at(w, g)] = kNone;
          in[at(v, g)] = kNone;
          if (--degree[w] <= 1 && w != base && alive[w]) stack.push_back(w);
        }
      }
    }
    // Canonical breadth-first numbering.
    std::vector<int> number(static_cast<std::size_t>(n), -1);
    std::vector<int> order{base};
    number[base] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      int v = order[i];
      for (int c = 0; c < 2 * rank; ++c) {
        int g = c / 2;
        int w = (c % 2 == 0) ? out[at(v, g)] : in[at(v, g)];
        if (w != kNone && number[w] < 0) {
          number[w] = static_cast<int>(order.size());
          order.push_back(w);
        }
      }
    }
    SubgroupGraph result(rank);
    result.out_.assign(order.size() * static_cast<std::size_t>(rank), kNone);
    result.in_.assign(order.size() * static_cast<std::size_t>(rank), kNone);
    for (std::size_t i = 0; i < order.size(); ++i) {
      int v = order[i];
      for (int g = 0; g < rank; ++g) {
        auto idx = i * static_cast<std::size_t>(rank) + static_cast<std::size_t>(g);
        if (out[at(v, g)] != kNone) result.out_[idx] = number[out[at(v, g)]];
        if (in[at(v, g)] != kNone) result.in_[idx] = number[in[at(v, g)]];
      }
    }
    return result;
  }
};

SubgroupGraph::SubgroupGraph(int rank)
    : rank_(rank),
      out_(static_cast<std::size_t>(rank), kNone),
      in_(static_cast<std::size_t>(rank), kNone) {
  if (rank < 1) {
    throw MalformedInput("subgroup graphs need an alphabet of rank >= 1");
  }
}

SubgroupGraph SubgroupGraph::from_generators(int rank, std::span<const Word> gens) {
  Builder b(rank);
  const int base = b.add_vertex();
  for (const auto& w : gens) {
    if (w.rank() != rank) {
      throw MalformedInput("generator rank does not match the ambient rank");
    }
    if (w.empty()) {
      continue;
    }
    int cur = base;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? base : b.add_vertex();
      b.add_letter_edge(cur, w[i], next);
      cur = next;
    }
  }
  return b.finish(base);
}

std::size_t SubgroupGraph::num_edges() const {
  return static_cast<std::size_t>(
      std::count_if(out_.begin(), out_.end(), [](Vertex v) { return v != kNone; }));
}

SubgroupGraph::Vertex SubgroupGraph::follow(Vertex v, Letter x) const {
  auto idx = static_cast<std::size_t>(v) * stride() +
             static_cast<std::size_t>(x.generator());
  return x.is_inverse() ? in_[idx] : out_[idx];
}

std::pair<std::size_t, SubgroupGraph::Vertex> SubgroupGraph::read_prefix(
    Vertex start, const Word& w) const {
  Vertex cur = start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Vertex next = follow(cur, w[i]);
    if (next == kNone) {
      return {i, cur};
    }
    cur = next;
  }
  return {w.size(), cur};
}

SubgroupGraph::Vertex SubgroupGraph::read(Vertex start, const Word& w) const {
  auto [len, end] = read_prefix(start, w);
  return len == w.size() ? end : kNone;
}

bool SubgroupGraph::contains(const Word& w) const {
  if (w.rank() != rank_) {
    throw MalformedInput("word rank does not match subgroup ambient rank");
  }
  return read(basepoint(), w) == basepoint();
}

std::size_t SubgroupGraph::rank() const { return num_edges() + 1 - num_vertices(); }

Index SubgroupGraph::index() const {
  for (auto v : out_) {
    if (v == kNone) return std::nullopt;
  }
  for (auto v : in_) {
    if (v == kNone) return std::nullopt;
  }
  return num_vertices();
}

namespace {

// Breadth-first distances over the underlying undirected graph.
std::vector<int> distances_from(const SubgroupGraph& h, SubgroupGraph::Vertex src) {
  std::vector<int> dist(h.num_vertices(), -1);
  std::deque<SubgroupGraph::Vertex> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (int c = 0; c < 2 * h.ambient_rank(); ++c) {
      auto w = h.follow(v, Letter{static_cast<std::uint16_t>(c)});
      if (w != SubgroupGraph::kNone && dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Word greedy_path(const SubgroupGraph& h, SubgroupGraph::Vertex from,
                 const std::vector<int>& dist_to_target) {
  std::vector<Letter> out;
  auto cur = from;
  while (dist_to_target[static_cast<std::size_t>(cur)] > 0) {
    for (int c = 0; c < 2 * h.ambient_rank(); ++c) {
      Letter x{static_cast<std::uint16_t>(c)};
      auto w = h.follow(cur, x);
      if (w != SubgroupGraph::kNone &&
          dist_to_target[static_cast<std::size_t>(w)] ==
              dist_to_target[static_cast<std::size_t>(cur)] - 1) {
        out.push_back(x);
        cur = w;
        break;
      }
    }
  }
  return Word(h.ambient_rank(), out);
}

struct SpanningTree {
  std::vector<Word> label;            // basepoint -> v
  std::vector<int> edge_basis_index;  // [v * rank + g] -> basis letter or -1
  std::vector<Word> basis;
};

SpanningTree spanning_tree(const SubgroupGraph& h) {
  const auto n = h.num_vertices();
  const int r = h.ambient_rank();
  SpanningTree t;
  t.label.assign(n, Word(r));
  std::vector<char> seen(n, 0);
  std::vector<char> tree_edge(n * static_cast<std::size_t>(r), 0);
  std::vector<SubgroupGraph::Vertex> order{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto v = order[i];
    for (int c = 0; c < 2 * r; ++c) {
      Letter x{static_cast<std::uint16_t>(c)};
      auto w = h.follow(v, x);
      if (w == SubgroupGraph::kNone || seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      t.label[static_cast<std::size_t>(w)] =
          t.label[static_cast<std::size_t>(v)] * Word::letter(r, x);
      auto tail = x.is_inverse() ? w : v;
      tree_edge[static_cast<std::size_t>(tail) * static_cast<std::size_t>(r) +
                static_cast<std::size_t>(x.generator())] = 1;
      order.push_back(w);
    }
  }
  t.edge_basis_index.assign(n * static_cast<std::size_t>(r), -1);
  for (std::size_t v = 0; v < n; ++v) {
    for (int g = 0; g < r; ++g) {
      auto w = h.follow(static_cast<SubgroupGraph::Vertex>(v), Letter::of(g));
      auto idx = v * static_cast<std::size_t>(r) + static_cast<std::size_t>(g);
      if (w == SubgroupGraph::kNone || tree_edge[idx]) continue;
      t.edge_basis_index[idx] = static_cast<int>(t.basis.size());
      t.basis.push_back(t.label[v] * Word::generator(r, g) *
                        invert(t.label[static_cast<std::size_t>(w)]));
    }
  }
  return t;
}

}  // namespace

std::vector<Word> SubgroupGraph::generators() const { return spanning_tree(*this).basis; }

Word SubgroupGraph::rewrite_in_basis(const Word& w) const {
  auto t = spanning_tree(*this);
  const int basis_rank = static_cast<int>(t.basis.size());
  std::vector<Letter> out;
  Vertex cur = basepoint();
  for (auto x : w) {
    Vertex next = follow(cur, x);
    if (next == kNone) {
      throw PreconditionError("word is not in the subgroup");
    }
    auto tail = x.is_inverse() ? next : cur;
    int idx = t.edge_basis_index[static_cast<std::size_t>(tail) * stride() +
                                 static_cast<std::size_t>(x.generator())];
    if (idx >= 0) {
      out.push_back(Letter::of(idx, x.is_inverse()));
    }
    cur = next;
  }
  if (cur != basepoint()) {
    throw PreconditionError("word is not in the subgroup");
  }
  return Word(std::max(basis_rank, 1), out);
}

Word SubgroupGraph::path_to_basepoint(Vertex v) const {
  return greedy_path(*this, v, distances_from(*this, basepoint()));
}

Word SubgroupGraph::path_from_basepoint(Vertex v) const {
  return greedy_path(*this, basepoint(), distances_from(*this, v));
}

std::vector<SubgroupGraph::Vertex> SubgroupGraph::cyclic_core_vertices() const {
  const auto n = num_vertices();
  std::vector<int> degree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (int c = 0; c < 2 * rank_; ++c) {
      degree[v] += follow(static_cast<Vertex>(v), Letter{static_cast<std::uint16_t>(c)}) != kNone;
    }
  }
  std::vector<char> alive(n, 1);
  std::vector<Vertex> stack;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] <= 1) stack.push_back(static_cast<Vertex>(v));
  }
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (!alive[static_cast<std::size_t>(v)]) continue;
    alive[static_cast<std::size_t>(v)] = 0;
    for (int c = 0; c < 2 * rank_; ++c) {
      auto w = follow(v, Letter{static_cast<std::uint16_t>(c)});
      if (w != kNone && alive[static_cast<std::size_t>(w)] &&
          --degree[static_cast<std::size_t>(w)] <= 1) {
        stack.push_back(w);
      }
    }
  }
  std::vector<Vertex> core;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v]) core.push_back(static_cast<Vertex>(v));
  }
  return core;
}

std::string SubgroupGraph::to_string() const {
  std::ostringstream os;
  os << "SubgroupGraph(V=" << num_vertices() << ", E=" << num_edges() << ";";
  for (std::size_t v = 0; v < num_vertices(); ++v) {
    for (int g = 0; g < rank_; ++g) {
      auto w = out_[v * stride() + static_cast<std::size_t>(g)];
      if (w != kNone) {
        os << ' ' << v << '-' << static_cast<char>('a' + g) << "->" << w;
      }
    }
  }
  os << ')';
  return os.str();
}

SubgroupGraph intersect(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (a.ambient_rank() != b.ambient_rank()) {
    throw MalformedInput("intersecting subgroups of different free groups");
  }
  const int r = a.ambient_rank();
  SubgroupGraph::Builder builder(r);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> order{{0, 0}};
  ids[{0, 0}] = builder.add_vertex();
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [u, v] = order[i];
    for (int g = 0; g < r; ++g) {
      auto u2 = a.follow(u, Letter::of(g));
      auto v2 = b.follow(v, Letter::of(g));
      if (u2 == SubgroupGraph::kNone || v2 == SubgroupGraph::kNone) continue;
      auto [it, fresh] = ids.try_emplace({u2, v2}, -1);
      if (fresh) {
        it->second = builder.add_vertex();
        order.emplace_back(u2, v2);
      }
      builder.add_edge(ids[{u, v}], g, it->second);
    }
    for (int g = 0; g < r; ++g) {
      auto u2 = a.follow(u, Letter::of(g, true));
      auto v2 = b.follow(v, Letter::of(g, true));
      if (u2 == SubgroupGraph::kNone || v2 == SubgroupGraph::kNone) continue;
      auto [it, fresh] = ids.try_emplace({u2, v2}, -1);
      if (fresh) {
        it->second = builder.add_vertex();
        order.emplace_back(u2, v2);
      }
      builder.add_edge(it->second, g, ids[{u, v}]);
    }
  }
  return builder.finish(0);
}

SubgroupGraph conjugate(const SubgroupGraph& h, const Word& g) {
  std::vector<Word> gens;
  for (const auto& x : h.generators()) {
    gens.push_back(conjugate_by(x, g));
  }
  return SubgroupGraph::from_generators(h.ambient_rank(), gens);
}

bool coset_equal(const Word& g1, const Word& g2, const SubgroupGraph& h) {
  return h.contains(invert(g2) * g1);
}

Word canonical_coset_rep(const SubgroupGraph& h, const Word& g) {
  // w in gH  <=>  w labels a path from the vertex H g^-1 to the basepoint
  // of the Schreier graph.  That vertex is reached by reading g^-1: its
  // core part ends at u, the rest s hangs off in a tree, so the coset is
  // { s^-1 p : p a reduced path u -> basepoint in the core }.
  const Word ginv = invert(g);
  auto [len, u] = h.read_prefix(SubgroupGraph::basepoint(), ginv);
  Word s = ginv.subword(len, ginv.size() - len);
  return invert(s) * h.path_to_basepoint(u);
}

bool is_subgroup_of(const SubgroupGraph& k, const SubgroupGraph& h) {
  for (const auto& x : k.generators()) {
    if (!h.contains(x)) return false;
  }
  return true;
}

Index relative_index(const SubgroupGraph& k, const SubgroupGraph& h) {
  if (!is_subgroup_of(k, h)) {
    throw PreconditionError("relative_index: K is not a subgroup of H");
  }
  if (h.is_trivial()) {
    return 1;
  }
  const int basis_rank = static_cast<int>(h.rank());
  std::vector<Word> rewritten;
  for (const auto& x : k.generators()) {
    rewritten.push_back(h.rewrite_in_basis(x));
  }
  return SubgroupGraph::from_generators(basis_rank, rewritten).index();
}

bool are_conjugate(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  if (a.is_trivial() || b.is_trivial()) return a.is_trivial() && b.is_trivial();
  const auto core_a = a.cyclic_core_vertices();
  const auto core_b = b.cyclic_core_vertices();
  if (core_a.size() != core_b.size()) return false;
  std::vector<char> in_a(a.num_vertices(), 0);
  std::vector<char> in_b(b.num_vertices(), 0);
  for (auto v : core_a) in_a[static_cast<std::size_t>(v)] = 1;
  for (auto v : core_b) in_b[static_cast<std::size_t>(v)] = 1;
  const int r = a.ambient_rank();
  auto core_follow = [r](const SubgroupGraph& g, const std::vector<char>& in,
                         SubgroupGraph::Vertex v, int c) {
    (void)r;
    auto w = g.follow(v, Letter{static_cast<std::uint16_t>(c)});
    return (w != SubgroupGraph::kNone && in[static_cast<std::size_t>(w)]) ? w
                                                                         : SubgroupGraph::kNone;
  };
  for (auto start : core_b) {
    std::vector<SubgroupGraph::Vertex> map(a.num_vertices(), SubgroupGraph::kNone);
    std::vector<char> used(b.num_vertices(), 0);
    std::vector<SubgroupGraph::Vertex> queue{core_a.front()};
    map[static_cast<std::size_t>(core_a.front())] = start;
    used[static_cast<std::size_t>(start)] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i) {
      auto v = queue[i];
      auto mv = map[static_cast<std::size_t>(v)];
      for (int c = 0; c < 2 * r && ok; ++c) {
        auto w = core_follow(a, in_a, v, c);
        auto mw = core_follow(b, in_b, mv, c);
        if ((w == SubgroupGraph::kNone) != (mw == SubgroupGraph::kNone)) {
          ok = false;
        } else if (w != SubgroupGraph::kNone) {
          auto& slot = map[static_cast<std::size_t>(w)];
          if (slot == SubgroupGraph::kNone) {
            if (used[static_cast<std::size_t>(mw)]) {
              ok = false;
            } else {
              slot = mw;
              used[static_cast<std::size_t>(mw)] = 1;
              queue.push_back(w);
            }
          } else if (slot != mw) {
            ok = false;
          }
        }
      }
    }
    if (ok && queue.size() == core_a.size()) return true;
  }
  return false;
}

std::optional<Word> conjugator_into(const Word& x, const SubgroupGraph& a) {
  if (x.empty()) {
    return Word(x.rank());
  }
  auto [core, t] = cyclic_reduce(x);
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    auto sv = static_cast<SubgroupGraph::Vertex>(v);
    if (a.read(sv, core) == sv) {
      // p core p^-1 in A, x = (t p^-1) (p core p^-1) (t p^-1)^-1.
      return t * invert(a.path_from_basepoint(sv));
    }
  }
  return std::nullopt;
}

std::size_t default_commensurator_bound(const SubgroupGraph& h) {
  return 2 * h.num_edges() + 4;
}

Commensurator commensurator(const SubgroupGraph& h, std::size_t bound,
                            const SubgroupGraph* ambient) {
  if (h.is_trivial()) {
    throw PreconditionError("commensurator of the trivial subgroup");
  }
  const int r = h.ambient_rank();
  if (h.rank() == 1) {
    // Comm(<w>) = <root of w> in a free group.
    const Word w = h.generators().front();
    const Word rt = root(w).root;
    auto c = SubgroupGraph::from_generators(r, {rt});
    if (ambient != nullptr) {
      c = intersect(c, *ambient);
    }
    return {c, Exactness::exact_result()};
  }
  std::vector<Word> gens = h.generators();
  const std::size_t base_count = gens.size();
  for_each_reduced_word(r, bound, [&](const Word& g) {
    if (g.empty()) return true;
    if (ambient != nullptr && !ambient->contains(g)) return true;
    if (h.contains(g)) return true;
    auto hg = conjugate(h, g);
    auto both = intersect(h, hg);
    if (both.is_trivial()) return true;
    if (relative_index(both, h).has_value() && relative_index(both, hg).has_value()) {
      gens.push_back(g);
    }
    return true;
  });
  auto result = SubgroupGraph::from_generators(r, gens);
  const bool whole = ambient != nullptr ? (result == *ambient)
                                        : result.index() == std::optional<std::size_t>(1);
  (void)base_count;
  return {result, whole ? Exactness::exact_result() : Exactness::bounded(bound)};
}

std::string generators_string(const SubgroupGraph& h) {
  std::string out;
  for (const auto& g : h.generators()) {
    if (!out.empty()) out += ',';
    out += to_string(g);
  }
  return out;
}

}  // namespace cuspfill
