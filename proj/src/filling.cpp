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

#include "cuspfill/filling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "cuspfill/errors.hpp"
#include "folding.hpp"

namespace cuspfill {

FillingSpec FillingSpec::uniform_power(const PeripheralStructure& p, long e) {
  FillingSpec spec;
  for (const auto& per : p.peripherals) {
    if (!per.is_cyclic()) {
      throw PreconditionError("uniform_power needs cyclic peripherals");
    }
    spec.kernels.push_back(power(per.generators.front(), e));
  }
  return spec;
}

void FillingSpec::validate(const PeripheralStructure& p) const {
  if (kernels.size() != p.size()) {
    throw MalformedInput("filling spec has " + std::to_string(kernels.size()) +
                         " kernels for " + std::to_string(p.size()) + " peripherals");
  }
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    if (!p.peripherals[i].group.contains(kernels[i])) {
      throw MalformedInput("kernel generator " + cuspfill::to_string(kernels[i]) +
                           " is not in peripheral " + std::to_string(i));
    }
  }
}

std::string to_string(Backend b) {
  return b == Backend::kFreeProduct ? "FREE_PRODUCT" : "SMALL_CANCELLATION";
}

namespace {

std::vector<Word> symmetrize(const std::vector<Word>& relators) {
  std::set<Word> out;
  for (const auto& r : relators) {
    for (const Word& base : {r, invert(r)}) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        out.insert(base.subword(i, base.size() - i) * base.subword(0, i));
      }
    }
  }
  return {out.begin(), out.end()};
}

std::size_t common_prefix(std::span<const Letter> u, std::span<const Letter> v) {
  std::size_t i = 0;
  while (i < u.size() && i < v.size() && u[i] == v[i]) ++i;
  return i;
}

bool is_letter_power(const Word& r) {
  return !r.empty() && std::all_of(r.begin(), r.end(), [&](Letter x) { return x == r.front(); });
}

long normalize_exponent(long e, long n) {
  if (n == 0) return e;
  long r = ((e % n) + n) % n;
  if (2 * r > n) r -= n;
  return r;
}

struct Syllable {
  int gen;
  long exp;
};

}  // namespace

PieceReport check_c_prime_sixth(const std::vector<Word>& relators) {
  for (const auto& r : relators) {
    if (r.empty()) throw MalformedInput("empty relator");
  }
  const auto sym = symmetrize(relators);
  PieceReport rep;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    for (std::size_t j = 0; j < sym.size(); ++j) {
      if (i == j) continue;
      const std::size_t p = common_prefix(sym[i].letters(), sym[j].letters());
      if (p == 0) continue;
      // ratio against sym[i]; the (j, i) iteration covers the other side
      const auto len = static_cast<long>(sym[i].size());
      if (6 * static_cast<long>(p) >= len) rep.ok = false;
      if (static_cast<long>(p) * rep.max_ratio.den > rep.max_ratio.num * len) {
        rep.max_ratio = {static_cast<long>(p), len};
        rep.worst_relator = sym[i];
        rep.worst_piece = p;
      }
    }
  }
  return rep;
}

QuotientPresentation QuotientPresentation::build(int rank, const std::vector<Word>& relators) {
  return build_impl(rank, relators, std::nullopt);
}

QuotientPresentation QuotientPresentation::build_with(int rank, const std::vector<Word>& relators,
                                                      Backend b) {
  return build_impl(rank, relators, b);
}

QuotientPresentation QuotientPresentation::build_impl(int rank, const std::vector<Word>& relators,
                                                      std::optional<Backend> force) {
  QuotientPresentation q;
  q.rank_ = rank;
  for (const auto& r : relators) {
    if (r.rank() != rank) throw MalformedInput("relator rank mismatch");
    auto core = cyclic_reduce(r).core;
    if (!core.empty()) q.relators_.push_back(core);
  }
  q.orders_.assign(static_cast<std::size_t>(rank), 0);
  const bool letter_powers = std::all_of(q.relators_.begin(), q.relators_.end(), is_letter_power);
  if (force == Backend::kFreeProduct && !letter_powers) {
    throw UnsupportedQuotient("free-product backend needs single-letter power relators");
  }
  if (letter_powers && force != Backend::kSmallCancellation) {
    q.backend_ = Backend::kFreeProduct;
    for (const auto& r : q.relators_) {
      auto& n = q.orders_[static_cast<std::size_t>(r.front().generator())];
      n = std::gcd(n, static_cast<long>(r.size()));
    }
    return q;
  }
  q.pieces_ = check_c_prime_sixth(q.relators_);
  if (!q.pieces_.ok) {
    throw UnsupportedQuotient("relator " + cuspfill::to_string(q.pieces_.worst_relator) +
                              " has a piece of length " + std::to_string(q.pieces_.worst_piece) +
                              " (ratio " + q.pieces_.max_ratio.to_string() +
                              " >= 1/6); neither backend applies");
  }
  q.backend_ = Backend::kSmallCancellation;
  q.symmetrized_ = symmetrize(q.relators_);
  return q;
}

QuotientPresentation QuotientPresentation::build(const PeripheralStructure& p,
                                                 const FillingSpec& spec) {
  spec.validate(p);
  return build(p.rank, spec.kernels);
}

std::pair<Word, std::size_t> QuotientPresentation::dehn_reduce(const Word& w) const {
  Word cur = w;
  std::size_t steps = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < cur.size() && !progress; ++i) {
      auto tail = cur.letters().subspan(i);
      for (const auto& r : symmetrized_) {
        const std::size_t p = common_prefix(tail, r.letters());
        if (2 * p > r.size()) {
          cur = cur.subword(0, i) * invert(r.subword(p, r.size() - p)) *
                cur.subword(i + p, cur.size() - i - p);
          ++steps;
          progress = true;
          break;
        }
      }
    }
  }
  return {cur, steps};
}

Word QuotientPresentation::normal_form(const Word& w) const {
  if (w.rank() != rank_) throw MalformedInput("word rank does not match the quotient");
  if (backend_ == Backend::kSmallCancellation) return dehn_reduce(w).first;
  std::vector<Syllable> stack;
  for (auto x : w) {
    const int g = x.generator();
    const long n = orders_[static_cast<std::size_t>(g)];
    const long e = x.is_inverse() ? -1 : 1;
    if (!stack.empty() && stack.back().gen == g) {
      stack.back().exp = normalize_exponent(stack.back().exp + e, n);
      if (stack.back().exp == 0) stack.pop_back();
    } else if (long ne = normalize_exponent(e, n); ne != 0) {
      stack.push_back({g, ne});
    }
  }
  std::vector<Letter> out;
  for (auto s : stack) {
    for (long i = 0; i < std::abs(s.exp); ++i) out.push_back(Letter::of(s.gen, s.exp < 0));
  }
  return Word(rank_, out);
}

bool QuotientPresentation::is_trivial(const Word& w) const { return normal_form(w).empty(); }

bool QuotientPresentation::has_infinite_order(const Word& w) const {
  if (backend_ != Backend::kFreeProduct) {
    throw UnsupportedQuotient("element orders are only decided for free-product quotients");
  }
  // Conjugate the normal form until its first and last syllables differ.
  Word nf = normal_form(w);
  while (!nf.empty() && nf.front().generator() == nf.back().generator()) {
    const int g = nf.front().generator();
    std::size_t lead = 0;
    while (lead < nf.size() && nf[lead].generator() == g) ++lead;
    if (lead == nf.size()) break;  // single syllable
    nf = normal_form(nf.subword(lead, nf.size() - lead) * nf.subword(0, lead));
  }
  if (nf.empty()) return false;
  const int g = nf.front().generator();
  const bool single = std::all_of(nf.begin(), nf.end(), [g](Letter x) { return x.generator() == g; });
  return !(single && orders_[static_cast<std::size_t>(g)] > 0);
}

std::string QuotientPresentation::to_string() const {
  auto alpha = Alphabet::standard(rank_);
  std::string out = "<";
  for (int g = 0; g < rank_; ++g) {
    if (g > 0) out += ',';
    out += alpha.name(g);
  }
  out += " |";
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += alpha.format(relators_[i]);
  }
  return out + ">";
}

std::vector<Word> peripheral_ball(const Peripheral& p, std::size_t bound) {
  const auto basis = p.group.generators();
  const int r = p.group.ambient_rank();
  std::set<Word> out;
  for_each_reduced_word(static_cast<int>(basis.size()), bound, [&](const Word& w) {
    auto img = substitute(w, basis, r);
    if (img.size() <= bound) out.insert(img);
    return true;
  });
  return {out.begin(), out.end()};
}

KernelGraph kernel_subgroup(const Peripheral& p, const Word& n, std::size_t conj_bound) {
  const int r = p.group.ambient_rank();
  if (n.empty()) return {SubgroupGraph(r), Exactness::exact_result()};
  if (p.is_cyclic()) {
    return {SubgroupGraph::from_generators(r, {n}), Exactness::exact_result()};
  }
  std::vector<Word> gens;
  for (const auto& u : peripheral_ball(p, conj_bound)) gens.push_back(conjugate_by(n, u));
  return {SubgroupGraph::from_generators(r, gens), Exactness::bounded(conj_bound)};
}

std::optional<long> slope_length(const PeripheralStructure& ps, const FillingSpec& spec,
                                 std::size_t i, std::size_t bound) {
  const auto& p = ps.peripherals.at(i);
  const Word& n = spec.kernels.at(i);
  if (n.empty()) return std::nullopt;
  const int r = ps.rank;
  if (p.is_cyclic()) {
    // Measured in the chosen generator: n = gen^e.
    const Word gen = p.generators.front();
    auto k = SubgroupGraph::from_generators(r, {gen}).rewrite_in_basis(n);
    return static_cast<long>(k.size());
  }
  auto kernel = kernel_subgroup(p, n, bound).group;
  std::optional<long> best;
  for_each_reduced_word(static_cast<int>(p.generators.size()), bound, [&](const Word& w) {
    auto img = substitute(w, p.generators, r);
    if (!img.empty() && kernel.contains(img)) {
      best = static_cast<long>(w.size());
      return false;
    }
    return true;
  });
  return best;
}

bool peripheral_injectivity_check(const QuotientPresentation& q, const Peripheral& p,
                                  const Word& kernel, std::size_t bound) {
  const auto elems = peripheral_ball(p, bound);
  const auto n = kernel_subgroup(p, kernel).group;
  std::vector<Word> nf;
  nf.reserve(elems.size());
  for (const auto& e : elems) nf.push_back(q.normal_form(e));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const Word diff = invert(elems[j]) * elems[i];
      if (n.contains(diff)) continue;
      const bool same = q.has_normal_form() ? nf[i] == nf[j] : q.is_trivial(diff);
      if (same) return false;
    }
  }
  return true;
}

InjectivityResult ball_injectivity_check(const QuotientPresentation& q,
                                         const std::vector<Word>& elements) {
  InjectivityResult res;
  if (q.has_normal_form()) {
    std::unordered_map<Word, std::size_t> first;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::set<Word> collided;
    for (std::size_t j = 0; j < elements.size(); ++j) {
      auto nf = q.normal_form(elements[j]);
      auto [it, fresh] = first.try_emplace(nf, j);
      if (!fresh && collided.insert(nf).second) {
        std::pair<std::size_t, std::size_t> cand{it->second, j};
        if (!best || cand < *best) best = cand;
      }
    }
    if (best) {
      res.ok = false;
      res.collision = std::make_pair(elements[best->first], elements[best->second]);
    }
    return res;
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (q.equal(elements[i], elements[j])) {
        res.ok = false;
        res.collision = std::make_pair(elements[i], elements[j]);
        return res;
      }
    }
  }
  return res;
}

ImageSubgroup::ImageSubgroup(const QuotientPresentation& q, const SubgroupGraph& h)
    : q_(q), rank_(q.rank()) {
  if (q.backend() != Backend::kFreeProduct) {
    throw UnsupportedQuotient("image subgroups are only folded for free-product quotients");
  }
  FoldingGraph fg(rank_);
  for (std::size_t v = 0; v < h.num_vertices(); ++v) fg.add_vertex();
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    for (int g = 0; g < rank_; ++g) {
      auto w = h.follow(static_cast<SubgroupGraph::Vertex>(v), Letter::of(g));
      if (w != SubgroupGraph::kNone) fg.add_edge(static_cast<int>(v), g, w);
    }
  }
  // Every x-orbit of the coset graph is a cycle whose length divides the
  // order of x.  Impose that on each x-component until nothing changes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int g = 0; g < rank_ && !changed; ++g) {
      const long n = q.generator_order(g);
      if (n == 0) continue;
      const auto total = static_cast<int>(fg.parent.size());
      std::vector<char> seen(static_cast<std::size_t>(total), 0);
      for (int v0 = 0; v0 < total && !changed; ++v0) {
        if (fg.find(v0) != v0 || seen[static_cast<std::size_t>(v0)]) continue;
        auto next = [&](int v) {
          int w = fg.out[fg.at(v, g)];
          return w == kNoVertex ? kNoVertex : fg.find(w);
        };
        auto prev = [&](int v) {
          int w = fg.in[fg.at(v, g)];
          return w == kNoVertex ? kNoVertex : fg.find(w);
        };
        if (next(v0) == kNoVertex && prev(v0) == kNoVertex) continue;
        // walk back to the start of a path, or once around a cycle
        int start = v0;
        bool cycle = false;
        while (prev(start) != kNoVertex) {
          start = prev(start);
          if (start == v0) {
            cycle = true;
            break;
          }
        }
        std::vector<int> comp{start};
        for (int w = next(start); w != kNoVertex && w != start; w = next(w)) comp.push_back(w);
        for (int w : comp) seen[static_cast<std::size_t>(w)] = 1;
        const auto k = static_cast<long>(comp.size());
        if (cycle) {
          const long p = std::gcd(k, n);
          if (p < k) {
            for (long i = 0; i + p < k; ++i) fg.identify(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(i + p)]);
            changed = true;
          }
        } else if (k > n) {
          for (long i = 0; i + n < k; ++i) fg.identify(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(i + n)]);
          changed = true;
        } else {
          // close the orbit, through fresh vertices when it is too short
          int last = comp.back();
          for (long i = k; i < n; ++i) {
            int fresh = fg.add_vertex();
            fg.add_edge(last, g, fresh);
            last = fresh;
            seen.push_back(1);
          }
          fg.add_edge(last, g, comp.front());
          changed = true;
        }
      }
    }
  }
  // Compact the resolved graph, basepoint first.
  const auto total = static_cast<int>(fg.parent.size());
  std::vector<int> number(static_cast<std::size_t>(total), -1);
  std::vector<int> roots{fg.find(0)};
  number[static_cast<std::size_t>(roots[0])] = 0;
  for (int v = 0; v < total; ++v) {
    if (fg.find(v) == v && number[static_cast<std::size_t>(v)] < 0) {
      number[static_cast<std::size_t>(v)] = static_cast<int>(roots.size());
      roots.push_back(v);
    }
  }
  out_.assign(roots.size() * static_cast<std::size_t>(rank_), kNoVertex);
  in_.assign(roots.size() * static_cast<std::size_t>(rank_), kNoVertex);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (int g = 0; g < rank_; ++g) {
      auto o = fg.out[fg.at(roots[i], g)];
      auto n = fg.in[fg.at(roots[i], g)];
      const auto idx = i * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(g);
      if (o != kNoVertex) out_[idx] = number[static_cast<std::size_t>(fg.find(o))];
      if (n != kNoVertex) in_[idx] = number[static_cast<std::size_t>(fg.find(n))];
    }
  }
}

bool ImageSubgroup::contains(const Word& w) const {
  int cur = 0;
  for (auto x : q_.normal_form(w)) {
    const auto idx = static_cast<std::size_t>(cur) * static_cast<std::size_t>(rank_) +
                     static_cast<std::size_t>(x.generator());
    cur = x.is_inverse() ? in_[idx] : out_[idx];
    if (cur == kNoVertex) return false;
  }
  return cur == 0;
}

}  // namespace cuspfill
