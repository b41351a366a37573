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

#include "cuspfill/cusped_space.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "cuspfill/errors.hpp"
#include "cuspfill/parallel.hpp"

namespace cuspfill {

namespace {

using Id = TruncatedCuspedSpace::Id;

std::vector<int> bfs(const std::vector<std::vector<Id>>& adj, const std::vector<Id>& sources,
                     const std::vector<char>* allowed = nullptr, int cap = -1) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<Id> queue;
  for (auto s : sources) {
    if (allowed != nullptr && (*allowed)[static_cast<std::size_t>(s)] == 0) continue;
    if (dist[static_cast<std::size_t>(s)] == 0) continue;
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Id u = queue.front();
    queue.pop_front();
    const int du = dist[static_cast<std::size_t>(u)];
    if (cap >= 0 && du >= cap) continue;
    for (auto v : adj[static_cast<std::size_t>(u)]) {
      const auto vi = static_cast<std::size_t>(v);
      if (dist[vi] != -1) continue;
      if (allowed != nullptr && (*allowed)[vi] == 0) continue;
      dist[vi] = du + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

GroupModel GroupModel::free_group(int rank) {
  if (rank < 1) throw MalformedInput("rank must be positive");
  GroupModel m;
  m.rank_ = rank;
  return m;
}

GroupModel GroupModel::quotient(const QuotientPresentation& q) {
  GroupModel m;
  m.rank_ = q.rank();
  m.q_ = q;
  return m;
}

bool GroupModel::has_canonical_forms() const { return !q_ || q_->has_normal_form(); }

Word GroupModel::canonical(const Word& w) const { return q_ ? q_->normal_form(w) : w; }

bool GroupModel::equal(const Word& u, const Word& v) const {
  return q_ ? q_->equal(u, v) : u == v;
}

std::string GroupModel::to_string() const {
  if (q_) return q_->to_string();
  return "F" + std::to_string(rank_);
}

std::string to_string(DistanceTag t) {
  return t == DistanceTag::kTrusted ? "TRUSTED" : "UPPER-BOUND";
}

TruncatedCuspedSpace TruncatedCuspedSpace::build(const GroupModel& model,
                                                 const PeripheralStructure& p, std::size_t R,
                                                 int D) {
  return build_tube(model, p, {Word(model.rank())}, R, D);
}

TruncatedCuspedSpace TruncatedCuspedSpace::build_tube(const GroupModel& model,
                                                      const PeripheralStructure& p,
                                                      const std::vector<Word>& centers,
                                                      std::size_t R, int D) {
  if (R < 1 || D < 1) throw PreconditionError("cusped space needs R >= 1 and D >= 1");
  if (p.rank != model.rank()) throw MalformedInput("peripheral structure rank mismatch");
  p.check_pairwise_nonconjugate();

  TruncatedCuspedSpace x;
  x.model_ = model;
  x.structure_ = p;
  x.R_ = R;
  x.D_ = D;
  const int rank = model.rank();
  const bool canonical = model.has_canonical_forms();

  // Generating set: letters in code order, then peripheral generators that
  // are not letters (S must meet each P_i in a generating set).
  std::vector<Word> gens;
  for (int g = 0; g < rank; ++g) {
    gens.push_back(Word::generator(rank, g, 1));
    gens.push_back(Word::generator(rank, g, -1));
  }
  for (const auto& per : p.peripherals) {
    for (const auto& w : per.generators) {
      for (const auto& s : {w, invert(w)}) {
        const Word c = canonical ? model.canonical(s) : s;
        if (c.size() <= 1) continue;
        if (std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
      }
    }
  }

  std::map<Word, int> index;
  auto lookup = [&](const Word& w) -> std::optional<int> {
    if (canonical) {
      auto it = index.find(model.canonical(w));
      if (it == index.end()) return std::nullopt;
      return it->second;
    }
    for (std::size_t e = 0; e < x.elements_.size(); ++e) {
      if (model.equal(x.elements_[e], w)) return static_cast<int>(e);
    }
    return std::nullopt;
  };
  auto add = [&](const Word& w, int level) {
    const Word rep = canonical ? model.canonical(w) : model.presentation()->dehn_reduce(w).first;
    if (canonical) index.emplace(rep, static_cast<int>(x.elements_.size()));
    x.elements_.push_back(rep);
    x.level_.push_back(level);
  };

  // Seeds: every prefix of every center, ShortLex-sorted, identity first.
  std::vector<Word> seeds{Word(rank)};
  for (const auto& c : centers) {
    if (c.rank() != rank) throw MalformedInput("center word rank mismatch");
    for (std::size_t k = 1; k <= c.size(); ++k) seeds.push_back(c.subword(0, k));
  }
  std::sort(seeds.begin(), seeds.end());
  for (const auto& w : seeds) {
    if (!lookup(w)) add(w, 0);
  }
  std::vector<std::vector<int>> step;  // step[e][s] = element of e*gens[s] or -1
  for (std::size_t e = 0; e < x.elements_.size(); ++e) {
    step.emplace_back(gens.size(), -1);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Word w = x.elements_[e] * gens[s];
      auto f = lookup(w);
      if (!f && static_cast<std::size_t>(x.level_[e]) < R) {
        add(w, x.level_[e] + 1);
        f = static_cast<int>(x.elements_.size()) - 1;
      }
      if (f) step[e][s] = *f;
    }
  }
  x.index_ = std::move(index);
  const std::size_t n = x.elements_.size();

  std::vector<std::vector<Id>> cayley(n);
  for (std::size_t e = 0; e < n; ++e) {
    for (auto f : step[e]) {
      if (f >= 0 && static_cast<std::size_t>(f) != e) {
        cayley[e].push_back(f);
        cayley[static_cast<std::size_t>(f)].push_back(static_cast<Id>(e));
      }
    }
  }
  for (auto& nb : cayley) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  // Cosets of each peripheral meeting the ball.
  x.element_coset_.assign(p.size(), std::vector<int>(n, -1));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& per = p.peripherals[i];
    std::vector<int> owner(n, -1);  // representative element of the coset
    if (!model.is_quotient()) {
      std::map<Word, int> by_rep;
      for (std::size_t e = 0; e < n; ++e) {
        const Word key = canonical_coset_rep(per.group, x.elements_[e]);
        owner[e] = by_rep.emplace(key, static_cast<int>(e)).first->second;
      }
    } else if (canonical) {
      const ImageSubgroup img(*model.presentation(), per.group);
      std::vector<int> reps;
      for (std::size_t e = 0; e < n; ++e) {
        const Word inv = invert(x.elements_[e]);
        for (auto r : reps) {
          if (img.contains(inv * x.elements_[static_cast<std::size_t>(r)])) {
            owner[e] = r;
            break;
          }
        }
        if (owner[e] < 0) {
          owner[e] = static_cast<int>(e);
          reps.push_back(static_cast<int>(e));
        }
      }
    } else {
      // No exact image membership: components of peripheral-generator edges.
      x.exact_cosets_ = false;
      UnionFind uf(n);
      for (std::size_t e = 0; e < n; ++e) {
        for (const auto& g : per.generators) {
          for (const auto& s : {g, invert(g)}) {
            if (auto f = lookup(x.elements_[e] * s)) uf.join(static_cast<int>(e), *f);
          }
        }
      }
      for (std::size_t e = 0; e < n; ++e) owner[e] = uf.find(static_cast<int>(e));
    }
    std::map<int, int> coset_of_owner;
    for (std::size_t e = 0; e < n; ++e) {
      auto [it, fresh] = coset_of_owner.emplace(owner[e], static_cast<int>(x.cosets_.size()));
      if (fresh) {
        Coset c;
        c.peripheral = i;
        c.rep = x.elements_[e];
        x.cosets_.push_back(std::move(c));
      }
      auto& c = x.cosets_[static_cast<std::size_t>(it->second)];
      c.elements.push_back(static_cast<int>(e));
      c.rep = std::min(c.rep, x.elements_[e]);
      x.element_coset_[i][e] = it->second;
    }
  }

  // Induced coset subgraphs and their metrics.
  for (auto& c : x.cosets_) {
    const std::size_t m = c.elements.size();
    std::vector<std::vector<Id>> local(m);
    for (std::size_t u = 0; u < m; ++u) {
      for (auto f : cayley[static_cast<std::size_t>(c.elements[u])]) {
        auto it = std::lower_bound(c.elements.begin(), c.elements.end(), f);
        if (it != c.elements.end() && *it == f) {
          local[u].push_back(static_cast<Id>(it - c.elements.begin()));
        }
      }
    }
    c.dist.resize(m);
    for (std::size_t u = 0; u < m; ++u) c.dist[u] = bfs(local, {static_cast<Id>(u)});
  }

  // Vertex layout: elements, then horoballs ordered by (coset, depth, element).
  Id next = static_cast<Id>(n);
  for (const auto& c : x.cosets_) {
    x.horo_offset_.push_back(next);
    next += static_cast<Id>(c.elements.size()) * D;
  }
  x.adj_.assign(static_cast<std::size_t>(next), {});
  auto link = [&](Id u, Id v) {
    x.adj_[static_cast<std::size_t>(u)].push_back(v);
    x.adj_[static_cast<std::size_t>(v)].push_back(u);
  };
  for (std::size_t e = 0; e < n; ++e) {
    for (auto f : cayley[e]) {
      if (static_cast<std::size_t>(f) > e) link(static_cast<Id>(e), f);
    }
  }
  for (std::size_t ci = 0; ci < x.cosets_.size(); ++ci) {
    const auto& c = x.cosets_[ci];
    const auto m = static_cast<Id>(c.elements.size());
    const Id base = x.horo_offset_[ci];
    for (int k = 1; k <= D; ++k) {
      const Id layer = base + (k - 1) * m;
      for (Id u = 0; u < m; ++u) {
        link(layer + u, k == 1 ? static_cast<Id>(c.elements[static_cast<std::size_t>(u)])
                               : layer - m + u);
        const long reach = k >= 62 ? std::numeric_limits<long>::max() : (1L << k);
        for (Id v = u + 1; v < m; ++v) {
          const int d = c.dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
          if (d > 0 && d <= reach) link(layer + u, layer + v);
        }
      }
    }
  }
  for (auto& nb : x.adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  // Truncation boundary: the R-sphere of the Cayley ball and the depth-D
  // layer of every horoball.
  x.boundary_.assign(x.adj_.size(), 0);
  std::vector<Id> boundary;
  for (Id v = 0; v < next; ++v) {
    const auto inf = x.info(v);
    const bool b = inf.coset < 0
                       ? static_cast<std::size_t>(x.level_[static_cast<std::size_t>(inf.element)]) == R
                       : inf.depth == D;
    if (b) {
      x.boundary_[static_cast<std::size_t>(v)] = 1;
      boundary.push_back(v);
    }
  }
  const auto from_boundary = bfs(x.adj_, boundary);
  x.interior_.assign(x.adj_.size(), 0);
  for (std::size_t v = 0; v < x.adj_.size(); ++v) {
    x.interior_[v] = (from_boundary[v] == -1 || from_boundary[v] >= 2) ? 1 : 0;
  }
  return x;
}

std::size_t TruncatedCuspedSpace::num_edges() const {
  std::size_t total = 0;
  for (const auto& nb : adj_) total += nb.size();
  return total / 2;
}

std::optional<int> TruncatedCuspedSpace::find_element(const Word& w) const {
  if (w.rank() != model_.rank()) return std::nullopt;
  if (model_.has_canonical_forms()) {
    auto it = index_.find(model_.canonical(w));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    if (model_.equal(elements_[e], w)) return static_cast<int>(e);
  }
  return std::nullopt;
}

std::optional<int> TruncatedCuspedSpace::coset_of(std::size_t peripheral, int element) const {
  if (peripheral >= element_coset_.size() || element < 0 ||
      static_cast<std::size_t>(element) >= elements_.size()) {
    return std::nullopt;
  }
  return element_coset_[peripheral][static_cast<std::size_t>(element)];
}

void TruncatedCuspedSpace::check(Id v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= adj_.size()) {
    throw PreconditionError("vertex " + std::to_string(v) + " is outside the truncation");
  }
}

TruncatedCuspedSpace::VertexInfo TruncatedCuspedSpace::info(Id v) const {
  check(v);
  if (static_cast<std::size_t>(v) < elements_.size()) return {v, -1, 0};
  const auto it = std::upper_bound(horo_offset_.begin(), horo_offset_.end(), v) - 1;
  const auto ci = static_cast<std::size_t>(it - horo_offset_.begin());
  const auto m = static_cast<Id>(cosets_[ci].elements.size());
  const Id off = v - *it;
  return {cosets_[ci].elements[static_cast<std::size_t>(off % m)], static_cast<int>(ci),
          static_cast<int>(off / m) + 1};
}

std::optional<TruncatedCuspedSpace::Id> TruncatedCuspedSpace::horoball_vertex(int coset,
                                                                              int element,
                                                                              int depth) const {
  if (coset < 0 || static_cast<std::size_t>(coset) >= cosets_.size()) return std::nullopt;
  if (depth < 0 || depth > D_) return std::nullopt;
  const auto& c = cosets_[static_cast<std::size_t>(coset)];
  const auto it = std::lower_bound(c.elements.begin(), c.elements.end(), element);
  if (it == c.elements.end() || *it != element) return std::nullopt;
  if (depth == 0) return element;
  const auto m = static_cast<Id>(c.elements.size());
  return horo_offset_[static_cast<std::size_t>(coset)] + (depth - 1) * m +
         static_cast<Id>(it - c.elements.begin());
}

std::string TruncatedCuspedSpace::vertex_name(Id v) const {
  const auto inf = info(v);
  const std::string g = cuspfill::to_string(elements_[static_cast<std::size_t>(inf.element)]);
  if (inf.coset < 0) return g;
  const auto& c = cosets_[static_cast<std::size_t>(inf.coset)];
  return "(" + cuspfill::to_string(c.rep) + "P" + std::to_string(c.peripheral) + "," + g + "," +
         std::to_string(inf.depth) + ")";
}

std::vector<int> TruncatedCuspedSpace::distances_from(Id src) const {
  check(src);
  return bfs(adj_, {src});
}

std::vector<int> TruncatedCuspedSpace::interior_distances_from(Id src) const {
  check(src);
  return bfs(adj_, {src}, &interior_);
}

int TruncatedCuspedSpace::distance(Id p, Id q) const {
  check(q);
  return distances_from(p)[static_cast<std::size_t>(q)];
}

std::vector<TruncatedCuspedSpace::Id> TruncatedCuspedSpace::geodesic(Id p, Id q) const {
  check(p);
  const auto to_q = distances_from(q);
  if (to_q[static_cast<std::size_t>(p)] < 0) return {};
  std::vector<Id> path{p};
  Id cur = p;
  while (cur != q) {
    const int want = to_q[static_cast<std::size_t>(cur)] - 1;
    for (auto v : adj_[static_cast<std::size_t>(cur)]) {
      if (to_q[static_cast<std::size_t>(v)] == want) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

TruncatedCuspedSpace::Query TruncatedCuspedSpace::query(Id p, Id q) const {
  Query out;
  out.distance = distance(p, q);
  const bool ok = interior(p) && interior(q) &&
                  interior_distances_from(p)[static_cast<std::size_t>(q)] == out.distance;
  out.tag = ok ? DistanceTag::kTrusted : DistanceTag::kUpperBound;
  return out;
}

void TruncatedCuspedSpace::write_edge_list(std::ostream& out) const {
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (auto v : adj_[u]) {
      if (static_cast<std::size_t>(v) > u) {
        out << vertex_name(static_cast<Id>(u)) << ' ' << vertex_name(v) << '\n';
      }
    }
  }
}

std::string DeltaEstimate::to_string() const {
  std::string v = twice_delta % 2 == 0 ? std::to_string(twice_delta / 2)
                                       : std::to_string(twice_delta) + "/2";
  return v + (exhaustive ? " (exhaustive)" : " (sampled)");
}

namespace {

// Doubled four-point defect: largest pair sum minus the middle one.
inline long defect(long s1, long s2, long s3) {
  const long hi = std::max({s1, s2, s3});
  const long lo = std::min({s1, s2, s3});
  const long mid = s1 + s2 + s3 - hi - lo;
  return hi - mid;
}

}  // namespace

DeltaEstimate estimate_delta(std::size_t n, const std::vector<std::uint16_t>& dist,
                             const std::vector<char>& trusted, const DeltaOptions& opt) {
  if (dist.size() != n * n) throw MalformedInput("distance matrix has the wrong size");
  const bool filter = opt.trusted_only && !trusted.empty();
  auto d = [&](std::size_t i, std::size_t j) -> long { return dist[i * n + j]; };
  auto t = [&](std::size_t i, std::size_t j) { return !filter || trusted[i * n + j] != 0; };
  DeltaEstimate out;
  if (opt.sample) {
    if (opt.samples == 0) throw PreconditionError("sample size must be positive");
    out.exhaustive = false;
    if (n == 0) return out;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng), e = pick(rng);
      if (!(t(a, b) && t(a, c) && t(a, e) && t(b, c) && t(b, e) && t(c, e))) continue;
      ++out.quadruples;
      out.twice_delta = std::max(
          out.twice_delta, defect(d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)));
    }
    return out;
  }
  if (n > kExhaustiveDeltaLimit) {
    throw PreconditionError("space too large for an exhaustive scan; use sampling");
  }
  std::vector<long> best(n, 0);
  std::vector<std::size_t> count(n, 0);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    long b = 0;
    std::size_t cnt = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!t(i, j)) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!t(i, k) || !t(j, k)) continue;
        const long dij = d(i, j), dik = d(i, k), djk = d(j, k);
        for (std::size_t l = k + 1; l < n; ++l) {
          if (!t(i, l) || !t(j, l) || !t(k, l)) continue;
          ++cnt;
          b = std::max(b, defect(dij + d(k, l), dik + d(j, l), d(i, l) + djk));
        }
      }
    }
    best[i] = b;
    count[i] = cnt;
  });
  for (std::size_t i = 0; i < n; ++i) {
    out.twice_delta = std::max(out.twice_delta, best[i]);
    out.quadruples += count[i];
  }
  return out;
}

DeltaEstimate estimate_delta(const TruncatedCuspedSpace& x, const DeltaOptions& opt) {
  const std::size_t n = x.num_vertices();
  if (opt.sample && opt.samples == 0) throw PreconditionError("sample size must be positive");
  if (!opt.sample && n > kExhaustiveDeltaLimit) {
    throw PreconditionError("space too large for an exhaustive scan; use sampling");
  }
  std::vector<std::uint16_t> dist(n * n, 0);
  std::vector<char> trusted;
  if (opt.trusted_only) trusted.assign(n * n, 0);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    const auto row = x.distances_from(static_cast<Id>(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < 0) throw StructuralError("cusped space is disconnected");
      dist[i * n + j] = static_cast<std::uint16_t>(row[j]);
    }
    if (opt.trusted_only && x.interior(static_cast<Id>(i))) {
      const auto inner = x.interior_distances_from(static_cast<Id>(i));
      for (std::size_t j = 0; j < n; ++j) trusted[i * n + j] = inner[j] == row[j] ? 1 : 0;
    }
  });
  return estimate_delta(n, dist, trusted, opt);
}

TruncatedCuspedSpace build_subgroup_space(const SubgroupGraph& h, const MalnormalCore& core,
                                          std::size_t R, int D) {
  const auto basis = h.generators();
  if (basis.empty()) throw PreconditionError("trivial subgroup has no cusped space");
  const int r = static_cast<int>(basis.size());
  PeripheralStructure d;
  d.rank = r;
  for (const auto& entry : core.entries) {
    std::vector<Word> gens;
    for (const auto& g : entry.group.generators()) gens.push_back(h.rewrite_in_basis(g));
    d.peripherals.push_back(Peripheral::from_generators(r, std::move(gens)));
  }
  return TruncatedCuspedSpace::build(GroupModel::free_group(r), d, R, D);
}

LipschitzMap build_check_map(const SubgroupGraph& h, const MalnormalCore& core,
                             const InducedStructure& induced, const TruncatedCuspedSpace& xh,
                             const TruncatedCuspedSpace& xg) {
  if (xg.model().is_quotient()) throw PreconditionError("check map targets a free group space");
  if (induced.target.size() != core.entries.size() ||
      induced.correction.size() != core.entries.size()) {
    throw MalformedInput("induced structure does not match the core");
  }
  LipschitzMap map;
  map.domain = &xh;
  map.codomain = &xg;
  map.basis = h.generators();
  map.corrections = induced.correction;
  map.target = induced.target;
  const int rank_g = xg.model().rank();
  const auto& per = xg.structure().peripherals;
  for (std::size_t i = 0; i < core.entries.size(); ++i) {
    const std::size_t j = induced.target[i];
    if (j >= per.size() ||
        !is_subgroup_of(core.entries[i].group, conjugate(per[j].group, induced.correction[i]))) {
      throw StructuralError("core entry " + std::to_string(i) + " <" +
                            generators_string(core.entries[i].group) +
                            "> does not conjugate into its peripheral");
    }
  }
  auto word_length = [&](const Word& w) -> long {
    if (auto e = xg.find_element(w)) return xg.element_length(*e);
    return static_cast<long>(w.size());
  };
  for (const auto& t : map.basis) map.a = std::max(map.a, word_length(t));
  for (const auto& c : map.corrections) map.b = std::max(map.b, word_length(c));
  map.alpha = std::max(map.a, map.b + 1);

  map.image.assign(xh.num_vertices(), -1);
  for (std::size_t v = 0; v < xh.num_vertices(); ++v) {
    const auto inf = xh.info(static_cast<Id>(v));
    const Word g = substitute(xh.element(inf.element), map.basis, rank_g);
    if (inf.coset < 0) {
      if (auto e = xg.find_element(g)) map.image[v] = xg.group_vertex(*e);
      continue;
    }
    const std::size_t i = xh.cosets()[static_cast<std::size_t>(inf.coset)].peripheral;
    const auto e = xg.find_element(g * map.corrections[i]);
    if (!e) continue;
    const auto c = xg.coset_of(map.target[i], *e);
    if (!c) continue;
    if (auto w = xg.horoball_vertex(*c, *e, inf.depth)) map.image[v] = *w;
  }
  return map;
}

LipschitzResult verify_lipschitz(const LipschitzMap& map) {
  LipschitzResult out;
  const auto& xh = *map.domain;
  const auto& xg = *map.codomain;
  const int cap = static_cast<int>(std::max(map.alpha, 1L)) * 4 + 4;
  std::vector<std::vector<Id>> adj(xg.num_vertices());
  for (std::size_t v = 0; v < adj.size(); ++v) adj[v] = xg.neighbors(static_cast<Id>(v));
  for (std::size_t u = 0; u < xh.num_vertices(); ++u) {
    const Id pu = map.image[u];
    if (pu < 0) continue;
    std::vector<Id> targets;
    for (auto v : xh.neighbors(static_cast<Id>(u))) {
      if (static_cast<std::size_t>(v) > u && map.image[static_cast<std::size_t>(v)] >= 0) {
        targets.push_back(map.image[static_cast<std::size_t>(v)]);
      }
    }
    if (targets.empty()) continue;
    const auto dist = bfs(adj, {pu}, nullptr, cap);
    for (auto t : targets) {
      const int d = dist[static_cast<std::size_t>(t)];
      const long stretch = d < 0 ? cap + 1 : d;
      ++out.edges;
      out.worst = std::max(out.worst, stretch);
      if (stretch > map.alpha) out.ok = false;
    }
  }
  return out;
}

long measure_quasiconvexity(const TruncatedCuspedSpace& x, const std::vector<Id>& y,
                            const std::vector<std::pair<Id, Id>>& pairs) {
  std::vector<char> in_y(x.num_vertices(), 0);
  for (auto v : y) {
    x.info(v);
    in_y[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<std::vector<Id>> adj(x.num_vertices());
  for (std::size_t v = 0; v < adj.size(); ++v) adj[v] = x.neighbors(static_cast<Id>(v));
  const auto to_y = bfs(adj, y);
  long lambda = 0;
  for (const auto& [p, q] : pairs) {
    x.info(p);
    x.info(q);
    if (!in_y[static_cast<std::size_t>(p)] || !in_y[static_cast<std::size_t>(q)]) {
      throw PreconditionError("quasiconvexity endpoints must lie in the image set");
    }
    for (auto v : x.geodesic(p, q)) {
      lambda = std::max(lambda, static_cast<long>(to_y[static_cast<std::size_t>(v)]));
    }
  }
  return lambda;
}

TruncatedCuspedSpace::Query cusped_length(const GroupModel& model, const PeripheralStructure& p,
                                          const Word& g, std::size_t r, int D) {
  const Word c = model.has_canonical_forms() ? model.canonical(g) : g;
  const auto x = TruncatedCuspedSpace::build_tube(model, p, {c}, r, D);
  return x.query(0, *x.find_element(c));
}

long horoball_coverage(const TruncatedCuspedSpace& x, const std::vector<Id>& y,
                       const std::vector<int>& cosets, int max_length) {
  std::vector<std::vector<Id>> adj(x.num_vertices());
  for (std::size_t v = 0; v < adj.size(); ++v) adj[v] = x.neighbors(static_cast<Id>(v));
  const auto to_y = bfs(adj, y);
  long beta = 0;
  for (auto ci : cosets) {
    const auto& c = x.cosets().at(static_cast<std::size_t>(ci));
    for (auto e : c.elements) {
      if (x.element_length(e) > max_length) continue;
      for (int k = 0; k <= x.max_depth(); ++k) {
        const int d = to_y[static_cast<std::size_t>(*x.horoball_vertex(ci, e, k))];
        if (d < 0) return -1;
        beta = std::max(beta, static_cast<long>(d));
      }
    }
  }
  return beta;
}

}  // namespace cuspfill
