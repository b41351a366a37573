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

#include "cuspfill/geodesic_diagnostics.hpp"

#include <algorithm>

#include "cuspfill/errors.hpp"

namespace cuspfill {

namespace {

using Id = TruncatedCuspedSpace::Id;

Word project_word(const QuotientPresentation& q, const Word& w) {
  return q.has_normal_form() ? q.normal_form(w) : q.dehn_reduce(w).first;
}

std::optional<Id> project(const TruncatedCuspedSpace& x, const TruncatedCuspedSpace& xq,
                          const QuotientPresentation& q, Id v) {
  const auto inf = x.info(v);
  const auto e = xq.find_element(project_word(q, x.element(inf.element)));
  if (!e) return std::nullopt;
  if (inf.coset < 0) return xq.group_vertex(*e);
  const auto c = xq.coset_of(x.cosets()[static_cast<std::size_t>(inf.coset)].peripheral, *e);
  if (!c) return std::nullopt;
  return xq.horoball_vertex(*c, *e, inf.depth);
}

DichotomyReport inconclusive(std::string reason, int depth = -1) {
  DichotomyReport r;
  r.kind = DichotomyCase::kInconclusive;
  r.reason = std::move(reason);
  r.offending_depth = depth;
  return r;
}

}  // namespace

long DiagnosticParams::penetration_depth() const {
  return std::max(1L, D_thresh - 5 * twice_delta - 2);
}

long DiagnosticParams::deep_threshold() const { return 2 * D_thresh - 10 * twice_delta - 4; }

std::string to_string(DichotomyCase c) {
  switch (c) {
    case DichotomyCase::kShortcuttable:
      return "SHORTCUTTABLE";
    case DichotomyCase::kDeepShortReturn:
      return "DEEP_SHORT_RETURN";
    case DichotomyCase::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

DichotomyReport classify_path(const TruncatedCuspedSpace& x, const FillingSpec& spec,
                              const std::vector<Id>& gamma, const DiagnosticParams& params) {
  if (x.model().is_quotient()) throw PreconditionError("classify_path expects a free group space");
  if (gamma.empty()) throw PreconditionError("empty path");
  const auto& p = x.structure();
  spec.validate(p);
  for (std::size_t i = 0; i + 1 < gamma.size(); ++i) {
    const auto& nb = x.neighbors(gamma[i]);
    if (!std::binary_search(nb.begin(), nb.end(), gamma[i + 1])) {
      throw PreconditionError("path is not an edge path");
    }
  }
  if (x.info(gamma.front()).coset >= 0 || x.info(gamma.back()).coset >= 0) {
    throw PreconditionError("path must join group elements");
  }
  for (auto v : gamma) {
    if (x.info(v).depth == x.max_depth()) {
      return inconclusive("path reaches the truncation depth", x.max_depth());
    }
  }

  const auto q = QuotientPresentation::build(p, spec);
  std::vector<Word> seeds;
  for (auto v : gamma) seeds.push_back(project_word(q, x.element(x.info(v).element)));
  const auto xq = TruncatedCuspedSpace::build_tube(GroupModel::quotient(q), p, seeds,
                                                   params.tube_radius, x.max_depth());
  std::vector<Id> image;
  for (auto v : gamma) {
    const auto w = project(x, xq, q, v);
    if (!w) return inconclusive("projection leaves the quotient truncation", x.info(v).depth);
    image.push_back(*w);
  }

  // Horoball excursions: maximal runs of positive-depth vertices.
  std::size_t start = 0;
  while (start < gamma.size()) {
    const auto inf = x.info(gamma[start]);
    if (inf.coset < 0) {
      ++start;
      continue;
    }
    std::size_t stop = start;
    int deepest = 0;
    while (stop < gamma.size() && x.info(gamma[stop]).coset == inf.coset) {
      deepest = std::max(deepest, x.info(gamma[stop]).depth);
      ++stop;
    }
    const Id entry = gamma[start - 1];
    const Id exit = gamma[stop];
    const long seg = static_cast<long>(stop - start) + 1;
    const Id entry_image = image[start - 1];
    const Id exit_image = image[stop];
    start = stop;
    if (deepest < params.penetration_depth()) continue;
    if (xq.distance(entry_image, exit_image) == seg) continue;  // projection stays geodesic
    const auto& coset = x.cosets()[static_cast<std::size_t>(inf.coset)];
    const Word g1 = x.element(x.info(entry).element);
    const Word g2 = x.element(x.info(exit).element);
    const Word& kernel = spec.kernels[coset.peripheral];
    long best = -1;
    Word best_n;
    for (long m = 1; m <= params.max_kernel_power; ++m) {
      for (long j : {-m, m}) {
        const Word n = power(kernel, j);
        const long d = cusped_length(x.model(), p, invert(g1) * g2 * n, params.tube_radius,
                                     x.max_depth())
                           .distance;
        if (best < 0 || d < best) {
          best = d;
          best_n = n;
        }
      }
    }
    const long d12 = x.distance(entry, exit);
    if (d12 >= params.deep_threshold() && best >= 0 && best <= params.return_threshold()) {
      DichotomyReport r;
      r.kind = DichotomyCase::kDeepShortReturn;
      r.peripheral = coset.peripheral;
      r.coset_rep = coset.rep;
      r.g1 = g1;
      r.g2 = g2;
      r.n = best_n;
      r.entry_exit = d12;
      r.short_return = best;
      return r;
    }
    return inconclusive("deep excursion without a short return within the kernel bound",
                        deepest);
  }

  if (gamma.size() > 1 && image.front() == image.back()) {
    return inconclusive("projected path is a nontrivial loop");
  }
  DichotomyReport r;
  r.kind = DichotomyCase::kShortcuttable;
  for (auto v : image) r.path.push_back(xq.vertex_name(v));
  return r;
}

std::vector<Id> regularize_path(const TruncatedCuspedSpace& x, const std::vector<Id>& gamma) {
  const std::size_t m_periph = x.structure().size();
  auto in_closed = [&](Id v, std::size_t j, int c) {
    const auto inf = x.info(v);
    if (inf.coset >= 0) return inf.coset == c;
    return x.coset_of(j, inf.element) == c;
  };
  std::vector<Id> out;
  std::size_t i = 0;
  while (i < gamma.size()) {
    out.push_back(gamma[i]);
    const auto inf = x.info(gamma[i]);
    if (inf.coset >= 0 || i + 1 == gamma.size()) {
      ++i;
      continue;
    }
    // Longest closed-horoball stretch from here ending on a group element.
    std::size_t best_end = i;
    int best_coset = -1;
    for (std::size_t j = 0; j < m_periph; ++j) {
      const int c = *x.coset_of(j, inf.element);
      std::size_t k = i + 1;
      std::size_t last_group = i;
      while (k < gamma.size() && in_closed(gamma[k], j, c)) {
        if (x.info(gamma[k]).coset < 0) last_group = k;
        ++k;
      }
      if (last_group > best_end) {
        best_end = last_group;
        best_coset = c;
      }
    }
    if (best_coset < 0) {
      ++i;
      continue;
    }
    const auto& coset = x.cosets()[static_cast<std::size_t>(best_coset)];
    auto pos = [&](Id v) {
      const int e = x.info(v).element;
      return static_cast<std::size_t>(
          std::lower_bound(coset.elements.begin(), coset.elements.end(), e) -
          coset.elements.begin());
    };
    const std::size_t from = pos(gamma[i]);
    const std::size_t to = pos(gamma[best_end]);
    const int d = coset.dist[from][to];
    const long run = static_cast<long>(best_end - i);
    int best_m = -1;
    long best_cost = 0;
    for (int m = 0; m < x.max_depth() && d > 0; ++m) {
      const long step = 1L << m;
      const long cost = 2L * m + (d + step - 1) / step;
      if (best_m < 0 || cost <= best_cost) {
        best_m = m;
        best_cost = cost;
      }
    }
    if (d <= 0 || best_cost > run) {
      for (std::size_t k = i + 1; k < best_end; ++k) out.push_back(gamma[k]);
      i = best_end;
      continue;
    }
    const int ci = best_coset;
    for (int k = 1; k <= best_m; ++k) out.push_back(*x.horoball_vertex(ci, coset.elements[from], k));
    // Horizontal hops of at most 2^m along the coset metric.
    std::size_t cur = from;
    const int reach = 1 << best_m;
    while (cur != to) {
      std::size_t next = cur;
      for (std::size_t w = 0; w < coset.elements.size(); ++w) {
        const int duw = coset.dist[cur][w];
        if (duw <= 0 || duw > reach || coset.dist[w][to] < 0) continue;
        if (coset.dist[w][to] + duw != coset.dist[cur][to]) continue;
        if (next == cur || coset.dist[w][to] < coset.dist[next][to]) next = w;
      }
      cur = next;
      out.push_back(*x.horoball_vertex(ci, coset.elements[cur], best_m));
    }
    for (int k = best_m - 1; k >= 1; --k) {
      out.push_back(*x.horoball_vertex(ci, coset.elements[to], k));
    }
    if (best_m == 0) out.pop_back();  // the last hop already landed on the exit vertex
    i = best_end;
  }
  return out;
}

DichotomyReport classify_geodesic(const PeripheralStructure& p, const FillingSpec& spec,
                                  const Word& h, const DiagnosticParams& params) {
  const auto x = TruncatedCuspedSpace::build_tube(GroupModel::free_group(p.rank), p, {h},
                                                  params.tube_radius, params.depth);
  return classify_path(x, spec, regularize_path(x, x.geodesic(0, *x.find_element(h))), params);
}

KernelClosure kernel_closure(const SubgroupGraph& h, const std::vector<KernelGraph>& kernels,
                             std::size_t bound) {
  const int rank = h.ambient_rank();
  const auto basis = h.generators();
  std::vector<Word> gens;
  auto add_conjugates = [&](const Word& g) {
    for (const auto& k : kernels) {
      for (const auto& x : k.group.generators()) gens.push_back(conjugate_by(x, g));
    }
  };
  if (basis.empty()) {
    add_conjugates(Word(rank));
  } else {
    for_each_reduced_word(static_cast<int>(basis.size()), bound, [&](const Word& w) {
      add_conjugates(substitute(w, basis, rank));
      return true;
    });
  }
  return {SubgroupGraph::from_generators(rank, gens), Exactness::bounded(bound)};
}

std::optional<Word> shorten_witness(const PeripheralStructure& p, const KernelClosure& k_h,
                                    const HFillingResult& filling, const Word& h,
                                    const DichotomyReport& report,
                                    const DiagnosticParams& params) {
  if (!filling.ok) throw PreconditionError("the filling is not an H-filling");
  if (report.kind != DichotomyCase::kDeepShortReturn) return std::nullopt;
  const Word k = report.g2 * report.n * invert(report.g2);
  if (!k_h.group.contains(k)) return std::nullopt;
  const auto model = GroupModel::free_group(p.rank);
  const long before = cusped_length(model, p, h, params.tube_radius, params.depth).distance;
  const long after = cusped_length(model, p, k * h, params.tube_radius, params.depth).distance;
  if (after >= before) return std::nullopt;
  return k;
}

std::vector<ShorteningStep> shorten_fully(const PeripheralStructure& p, const FillingSpec& spec,
                                          const KernelClosure& k_h, const HFillingResult& filling,
                                          const Word& h, const DiagnosticParams& params,
                                          std::size_t max_steps) {
  std::vector<ShorteningStep> steps;
  Word cur = h;
  const auto model = GroupModel::free_group(p.rank);
  for (std::size_t s = 0; s < max_steps; ++s) {
    ShorteningStep step;
    step.h = cur;
    step.length = cusped_length(model, p, cur, params.tube_radius, params.depth).distance;
    const auto report = classify_geodesic(p, spec, cur, params);
    const auto k = shorten_witness(p, k_h, filling, cur, report, params);
    if (k) step.k = *k;
    steps.push_back(step);
    if (!k) break;
    cur = *k * cur;
  }
  return steps;
}

}  // namespace cuspfill
