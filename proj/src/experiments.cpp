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

#include "cuspfill/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "cuspfill/cusped_space.hpp"
#include "cuspfill/errors.hpp"
#include "cuspfill/geodesic_diagnostics.hpp"
#include "cuspfill/parallel.hpp"

namespace cuspfill {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    if constexpr (std::is_unsigned_v<T>) {
      if (v < 0) throw std::invalid_argument(value);
    }
    return static_cast<T>(v);
  } catch (const std::logic_error&) {
    throw MalformedInput("bad number for " + key + ": " + value);
  }
}

// Everything the stages share.
struct Context {
  Alphabet alpha;
  int rank;
  SubgroupGraph h;
  Word g;

  explicit Context(const PipelineConfig& c)
      : alpha(Alphabet::from_string(c.alphabet)), rank(alpha.size()), h(rank), g(rank) {
    if (c.h_generators.empty()) throw MalformedInput("H needs at least one generator");
    std::vector<Word> gens;
    for (const auto& s : c.h_generators) gens.push_back(alpha.parse(s));
    h = SubgroupGraph::from_generators(rank, gens);
    g = alpha.parse(c.g);
  }

  std::string fmt(const Word& w) const { return alpha.format(w); }
  Json words(const std::vector<Word>& ws) const {
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(fmt(w));
    return out;
  }
};

struct Structures {
  HeightCertificate cert;
  MalnormalCore core;
  bool core_fallback = false;
  InducedStructure induced;
};

Structures compute_structures(const Context& ctx, std::size_t L) {
  Structures s;
  s.cert = height(ctx.h, L);
  s.core = malnormal_core(ctx.h, L);
  if (s.core.entries.empty()) {
    // Malnormal at this bound: fill H's own commensurator.
    s.core.entries.push_back({ctx.h, Exactness::bounded(L)});
    s.core_fallback = true;
  }
  s.induced = induced_peripheral_structure(ctx.h, s.core, L);
  return s;
}

std::vector<Word> ball(int rank, std::size_t radius) {
  std::vector<Word> out;
  for_each_reduced_word(rank, radius, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::optional<long> least_h_filling(const Context& ctx, const PipelineConfig& c,
                                    const Structures& s) {
  for (long e = std::max(1L, c.exponent_min); e <= c.exponent_max; ++e) {
    const auto spec = FillingSpec::uniform_power(s.induced.structure, e);
    if (is_h_filling(ctx.h, s.induced.structure, spec, s.core, c.L).ok) return e;
  }
  return std::nullopt;
}

Json exactness_json(const Exactness& e) { return e.to_string(); }

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw MalformedInput("config line " + std::to_string(lineno) + " has no '='");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

PipelineConfig PipelineConfig::from_map(const std::map<std::string, std::string>& kv) {
  PipelineConfig c;
  for (const auto& [k, v] : kv) {
    if (k == "alphabet") c.alphabet = v;
    else if (k == "H") c.h_generators = split_list(v);
    else if (k == "g") c.g = v;
    else if (k == "L") c.L = parse_number<std::size_t>(k, v);
    else if (k == "R") c.R = parse_number<std::size_t>(k, v);
    else if (k == "D") c.D = parse_number<int>(k, v);
    else if (k == "exponent_min") c.exponent_min = parse_number<long>(k, v);
    else if (k == "exponent_max") c.exponent_max = parse_number<long>(k, v);
    else if (k == "injectivity_radius") c.injectivity_radius = parse_number<std::size_t>(k, v);
    else if (k == "separation_margin") c.separation_margin = parse_number<std::size_t>(k, v);
    else if (k == "height_bound") c.height_bound = parse_number<std::size_t>(k, v);
    else if (k == "witness_length") c.witness_length = parse_number<std::size_t>(k, v);
    else if (k == "closure_bound") c.closure_bound = parse_number<std::size_t>(k, v);
    else if (k == "exponents") {
      c.sweep_exponents.clear();
      for (const auto& x : split_list(v)) c.sweep_exponents.push_back(parse_number<long>(k, x));
    } else if (k == "radii") {
      c.sweep_radii.clear();
      for (const auto& x : split_list(v)) c.sweep_radii.push_back(parse_number<std::size_t>(k, x));
    } else if (k == "threads") c.threads = parse_number<unsigned>(k, v);
    else if (k == "seed") c.seed = parse_number<std::uint64_t>(k, v);
    else throw MalformedInput("unknown config key: " + k);
  }
  if (c.D < 1 || c.R < 1) throw MalformedInput("R and D must be positive");
  return c;
}

Json PipelineConfig::to_json() const {
  // Threads and seed are left out: they must not change the report.
  Json j;
  j["alphabet"] = alphabet;
  j["H"] = h_generators;
  j["g"] = g;
  j["L"] = L;
  j["R"] = R;
  j["D"] = D;
  j["exponent_min"] = exponent_min;
  j["exponent_max"] = exponent_max;
  j["injectivity_radius"] = injectivity_radius;
  j["separation_margin"] = separation_margin;
  j["height_bound"] = height_bound;
  j["witness_length"] = witness_length;
  j["closure_bound"] = closure_bound;
  return j;
}

QuotientHeightSearch quotient_height_search(const QuotientPresentation& q, const SubgroupGraph& h,
                                            std::size_t k, std::size_t bound,
                                            std::size_t witness_length) {
  if (!q.has_normal_form()) throw UnsupportedQuotient("height search needs normal forms");
  QuotientHeightSearch out;
  out.exactness = Exactness::bounded(bound);
  const int rank = q.rank();
  const ImageSubgroup img(q, h);

  std::vector<Word> reps;
  for_each_reduced_word(rank, bound, [&](const Word& g) {
    const Word inv = invert(g);
    for (const auto& r : reps) {
      if (img.contains(inv * r)) return true;
    }
    reps.push_back(g);
    return true;
  });

  // Infinite-order elements of pi(H); a power landing in a conjugate is
  // enough, since the intersection then contains a common power.
  constexpr long kMaxPower = 12;
  std::set<Word> seen;
  std::vector<Word> candidates;
  for_each_reduced_word(rank, witness_length, [&](const Word& w) {
    if (w.empty() || !h.contains(w)) return true;
    const Word nf = q.normal_form(w);
    if (seen.insert(nf).second && q.has_infinite_order(nf)) candidates.push_back(nf);
    return true;
  });

  for (const auto& x : candidates) {
    std::vector<Word> hit;
    for (const auto& r : reps) {
      for (long m = 1; m <= kMaxPower; ++m) {
        if (img.contains(conjugate_by(power(x, m), invert(r)))) {
          hit.push_back(r);
          break;
        }
      }
    }
    if (hit.size() > out.best) {
      out.best = hit.size();
      out.witness = x;
      out.conjugators = hit;
    }
    if (hit.size() >= k) {
      out.found = true;
      out.conjugators.resize(k);
      return out;
    }
  }
  return out;
}

Json run_pipeline(const PipelineConfig& c) {
  const Context ctx(c);
  if (ctx.h.contains(ctx.g)) {
    throw PreconditionError("g = " + c.g + " lies in H; there is nothing to separate");
  }
  Json rep;
  rep["schema"] = kReportSchema;
  rep["input"] = c.to_json();
  bool positive = true;

  // 1-3: height, malnormal core, induced peripheral structure.
  const Structures s = compute_structures(ctx, c.L);
  rep["height"] = {{"k", s.cert.k},
                   {"conjugators", ctx.words(s.cert.conjugators)},
                   {"witness", ctx.fmt(s.cert.witness)},
                   {"exactness", exactness_json(s.cert.exactness)},
                   {"verified", verify_height_certificate(ctx.h, s.cert)}};
  Json core = Json::array();
  for (const auto& e : s.core.entries) {
    core.push_back({{"generators", ctx.words(e.group.generators())},
                    {"exactness", exactness_json(e.exactness)}});
  }
  rep["malnormal_core"] = {{"entries", core}, {"fallback_to_H", s.core_fallback}};
  Json per = Json::array();
  for (std::size_t j = 0; j < s.induced.structure.size(); ++j) {
    per.push_back({{"generators", ctx.words(s.induced.structure.peripherals[j].generators)},
                   {"exactness", exactness_json(s.induced.exactness[j])}});
  }
  Json corr = Json::array();
  for (std::size_t i = 0; i < s.induced.target.size(); ++i) {
    corr.push_back({{"core_entry", i},
                    {"peripheral", s.induced.target[i]},
                    {"c", ctx.fmt(s.induced.correction[i])}});
  }
  rep["induced_structure"] = {{"peripherals", per}, {"corrections", corr}};

  // 4: filling exponents.
  const auto e0 = least_h_filling(ctx, c, s);
  Json filling;
  filling["least_h_filling_exponent"] = e0 ? Json(*e0) : Json(nullptr);
  std::optional<long> chosen;
  Json tried = Json::array();
  const auto elements = ball(ctx.rank, c.injectivity_radius);
  if (e0) {
    for (long e = *e0; e <= c.exponent_max; e += *e0) {
      const auto spec = FillingSpec::uniform_power(s.induced.structure, e);
      const auto q = QuotientPresentation::build(s.induced.structure, spec);
      const auto inj = ball_injectivity_check(q, elements);
      Json row = {{"exponent", e}, {"ball_injective", inj.ok}};
      if (inj.collision) {
        row["collision"] = ctx.words({inj.collision->first, inj.collision->second});
      }
      tried.push_back(row);
      if (inj.ok) {
        chosen = e;
        break;
      }
    }
  }
  filling["tried"] = tried;
  filling["injectivity_radius"] = c.injectivity_radius;
  filling["exponent"] = chosen ? Json(*chosen) : Json(nullptr);
  if (!chosen) {
    positive = false;
    filling["error"] = "no exponent in range passes both the H-filling and injectivity checks";
    rep["filling"] = filling;
    rep["verdict"] = {{"all_positive", false}};
    return rep;
  }
  const auto spec = FillingSpec::uniform_power(s.induced.structure, *chosen);
  const auto hf = is_h_filling(ctx.h, s.induced.structure, spec, s.core, c.L);
  filling["kernels"] = ctx.words(spec.kernels);
  filling["h_filling"] = hf.ok;
  rep["filling"] = filling;

  // 5: quotient.
  const auto q = QuotientPresentation::build(s.induced.structure, spec);
  rep["quotient"] = {{"presentation", q.to_string()},
                     {"backend", to_string(q.backend())},
                     {"c_prime_sixth", q.pieces().ok},
                     {"max_piece_ratio", q.pieces().max_ratio.to_string()}};

  // 6: separation.
  Json sep;
  const std::size_t budget = ctx.g.size() + c.separation_margin;
  std::optional<Word> collision;
  std::size_t checked = 0;
  for_each_reduced_word(ctx.rank, budget, [&](const Word& w) {
    if (!ctx.h.contains(w)) return true;
    ++checked;
    if (q.equal(w, ctx.g)) {
      collision = w;
      return false;
    }
    return true;
  });
  sep["collision_search"] = {{"budget", budget},
                             {"elements_checked", checked},
                             {"collision", collision ? Json(ctx.fmt(*collision)) : Json(nullptr)}};
  bool separated = !collision.has_value();
  if (q.has_normal_form()) {
    const ImageSubgroup img(q, ctx.h);
    const bool exact = !img.contains(ctx.g);
    sep["exact_verdict"] = exact;
    sep["exactness"] = "exact";
    separated = exact && separated;
  } else {
    sep["exact_verdict"] = nullptr;
    sep["exactness"] = Exactness::bounded(budget).to_string();
  }
  sep["separated"] = separated;
  rep["separation"] = sep;
  positive = positive && separated && hf.ok && s.cert.k > 0;

  // 7: quasiconvexity of pi(H) in the quotient cusped space.
  if (q.has_normal_form()) {
    const ImageSubgroup img(q, ctx.h);
    const auto x = TruncatedCuspedSpace::build(GroupModel::quotient(q), s.induced.structure, c.R,
                                               c.D);
    std::vector<int> y;
    std::vector<int> group_part;
    for (std::size_t e = 0; e < x.num_elements(); ++e) {
      const Word& w = x.element(static_cast<int>(e));
      if (!img.contains(w)) continue;
      group_part.push_back(static_cast<int>(e));
      y.push_back(static_cast<int>(e));
      for (std::size_t i = 0; i < s.core.entries.size(); ++i) {
        const auto f = x.find_element(w * s.induced.correction[i]);
        if (!f) continue;
        const auto cs = x.coset_of(s.induced.target[i], *f);
        if (!cs) continue;
        for (int d = 1; d <= x.max_depth(); ++d) y.push_back(*x.horoball_vertex(*cs, *f, d));
      }
    }
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < group_part.size(); ++i)
      for (std::size_t j = i + 1; j < group_part.size(); ++j)
        pairs.emplace_back(group_part[i], group_part[j]);
    rep["quasiconvexity"] = {{"R", c.R},
                             {"D", c.D},
                             {"image_vertices", y.size()},
                             {"pairs", pairs.size()},
                             {"lambda", measure_quasiconvexity(x, y, pairs)}};
  } else {
    rep["quasiconvexity"] = nullptr;
  }

  // 8: falsification search for a height-k certificate of pi(H).
  if (q.has_normal_form() && s.cert.k >= 2) {
    const auto hs = quotient_height_search(q, ctx.h, s.cert.k, c.height_bound, c.witness_length);
    rep["height_decrease"] = {
        {"target_k", s.cert.k},
        {"bound", c.height_bound},
        {"witness_length", c.witness_length},
        {"found", hs.found},
        {"most_cosets", hs.best},
        {"best_witness", hs.best > 0 ? Json(ctx.fmt(hs.witness)) : Json(nullptr)},
        {"best_conjugators", ctx.words(hs.conjugators)},
        {"exactness", exactness_json(hs.exactness)},
        {"verdict", hs.found ? "height-k certificate found in the quotient"
                             : "consistent with height decrease at bound " +
                                   std::to_string(c.height_bound)}};
    positive = positive && !hs.found;
  } else {
    rep["height_decrease"] = nullptr;
  }

  // Dichotomy and shortening on the induced kernel generators.
  if (hf.ok) {
    const auto kernels = induced_filling_kernels(s.core, s.induced, spec);
    const auto closure = kernel_closure(ctx.h, kernels, c.closure_bound);
    DiagnosticParams params;
    params.L = 1;
    params.D_thresh = 1;
    Json dich = Json::array();
    Json shortening = Json::array();
    std::vector<Word> samples;
    for (const auto& kg : kernels) {
      for (const auto& w : kg.group.generators()) samples.push_back(w);
    }
    for (const auto& w : samples) {
      const auto r = classify_geodesic(s.induced.structure, spec, w, params);
      Json d = {{"h", ctx.fmt(w)}, {"case", to_string(r.kind)}};
      if (r.kind == DichotomyCase::kDeepShortReturn) {
        d["g1"] = ctx.fmt(r.g1);
        d["g2"] = ctx.fmt(r.g2);
        d["n"] = ctx.fmt(r.n);
        d["entry_exit"] = r.entry_exit;
        d["short_return"] = r.short_return;
      } else if (r.kind == DichotomyCase::kInconclusive) {
        d["reason"] = r.reason;
      }
      dich.push_back(d);
      const auto steps =
          shorten_fully(s.induced.structure, spec, closure, hf, w, params);
      Json chain = Json::array();
      for (const auto& st : steps) chain.push_back({{"h", ctx.fmt(st.h)}, {"length", st.length}});
      shortening.push_back(chain);
    }
    rep["dichotomy"] = {{"L", params.L}, {"D_thresh", params.D_thresh},
                        {"twice_delta", params.twice_delta}, {"reports", dich}};
    rep["shortening"] = {{"closure", exactness_json(closure.exactness)}, {"chains", shortening}};
  }

  rep["verdict"] = {{"all_positive", positive}};
  return rep;
}

std::string run_sweep(const PipelineConfig& c) {
  const Context ctx(c);
  std::ostringstream out;
  out << "exponent,radius,h_filling,ball_injective,peripheral_injective,separated\n";
  std::vector<std::pair<long, std::size_t>> grid;
  for (auto e : c.sweep_exponents)
    for (auto r : c.sweep_radii) grid.emplace_back(e, r);
  if (grid.empty()) return out.str();
  const Structures s = compute_structures(ctx, c.L);
  std::vector<std::string> rows(grid.size());
  parallel_for(grid.size(), c.threads, [&](std::size_t idx) {
    const auto [e, r] = grid[idx];
    const auto spec = FillingSpec::uniform_power(s.induced.structure, e);
    const bool hf = is_h_filling(ctx.h, s.induced.structure, spec, s.core, c.L).ok;
    const auto q = QuotientPresentation::build(s.induced.structure, spec);
    const bool inj = ball_injectivity_check(q, ball(ctx.rank, r)).ok;
    bool pinj = true;
    for (std::size_t i = 0; i < s.induced.structure.size(); ++i) {
      pinj = pinj && peripheral_injectivity_check(q, s.induced.structure.peripherals[i],
                                                  spec.kernels[i],
                                                  static_cast<std::size_t>(2 * e));
    }
    std::string sep = "NA";
    if (q.has_normal_form()) sep = ImageSubgroup(q, ctx.h).contains(ctx.g) ? "false" : "true";
    std::ostringstream row;
    row << e << ',' << r << ',' << (hf ? "true" : "false") << ',' << (inj ? "true" : "false")
        << ',' << (pinj ? "true" : "false") << ',' << sep << '\n';
    rows[idx] = row.str();
  });
  for (const auto& row : rows) out << row;
  return out.str();
}

Json run_height(const PipelineConfig& c) {
  const Context ctx(c);
  const auto cert = height(ctx.h, c.L);
  Json j;
  j["schema"] = kCertificateSchema;
  j["alphabet"] = c.alphabet;
  j["H"] = c.h_generators;
  j["k"] = cert.k;
  j["conjugators"] = ctx.words(cert.conjugators);
  j["witness"] = ctx.fmt(cert.witness);
  j["exactness"] = exactness_json(cert.exactness);
  return j;
}

DeltaConfig DeltaConfig::from_map(const std::map<std::string, std::string>& kv) {
  DeltaConfig c;
  for (const auto& [k, v] : kv) {
    if (k == "alphabet") c.alphabet = v;
    else if (k == "P") c.peripherals = split_list(v);
    else if (k == "relators") c.relators = split_list(v);
    else if (k == "R") c.R = parse_number<std::size_t>(k, v);
    else if (k == "D") c.D = parse_number<int>(k, v);
    else if (k == "trusted_only") {
      if (v != "true" && v != "false") throw MalformedInput("trusted_only must be true or false");
      c.trusted_only = v == "true";
    } else if (k == "samples") c.samples = parse_number<std::size_t>(k, v);
    else if (k == "threads") c.threads = parse_number<unsigned>(k, v);
    else if (k == "seed") c.seed = parse_number<std::uint64_t>(k, v);
    else throw MalformedInput("unknown config key: " + k);
  }
  if (c.D < 1 || c.R < 1) throw MalformedInput("R and D must be positive");
  return c;
}

Json run_delta(const DeltaConfig& c) {
  const Alphabet alpha = Alphabet::from_string(c.alphabet);
  const int rank = alpha.size();
  PeripheralStructure p{rank, {}};
  for (const auto& s : c.peripherals) {
    p.peripherals.push_back(Peripheral::from_generators(rank, {alpha.parse(s)}));
  }
  std::vector<Word> rels;
  for (const auto& s : c.relators) rels.push_back(alpha.parse(s));
  const auto model = rels.empty() ? GroupModel::free_group(rank)
                                  : GroupModel::quotient(QuotientPresentation::build(rank, rels));
  const auto x = TruncatedCuspedSpace::build(model, p, c.R, c.D);
  DeltaOptions opt;
  opt.sample = c.samples > 0;
  opt.samples = c.samples;
  opt.seed = c.seed;
  opt.trusted_only = c.trusted_only;
  opt.threads = c.threads;
  const auto d = estimate_delta(x, opt);
  Json j;
  j["schema"] = kReportSchema;
  j["model"] = model.to_string();
  j["R"] = c.R;
  j["D"] = c.D;
  j["vertices"] = x.num_vertices();
  j["edges"] = x.num_edges();
  j["trusted_only"] = c.trusted_only;
  j["twice_delta"] = d.twice_delta;
  j["delta"] = d.to_string();
  j["quadruples"] = d.quadruples;
  j["exhaustive"] = d.exhaustive;
  if (!d.exhaustive) j["seed"] = c.seed;
  return j;
}

namespace {

std::vector<Word> parse_words(const Alphabet& alpha, const Json& arr) {
  if (!arr.is_array()) throw MalformedInput("expected a list of words");
  std::vector<Word> out;
  for (const auto& s : arr) out.push_back(alpha.parse(s.get<std::string>()));
  return out;
}

}  // namespace

VerifyResult verify_certificate(const Json& doc) {
  VerifyResult res;
  auto fail = [&](std::string why) {
    res.ok = false;
    res.failures.push_back(std::move(why));
  };
  try {
    const std::string schema = doc.at("schema").get<std::string>();
    const Json& input = schema == kReportSchema ? doc.at("input") : doc;
    const Alphabet alpha = Alphabet::from_string(input.at("alphabet").get<std::string>());
    const int rank = alpha.size();
    const auto hgens = parse_words(alpha, input.at("H"));
    const auto h = SubgroupGraph::from_generators(rank, hgens);
    const Json& ht = schema == kReportSchema ? doc.at("height") : doc;
    if (schema != kReportSchema && schema != kCertificateSchema) {
      throw MalformedInput("unknown schema " + schema);
    }

    HeightCertificate cert;
    cert.k = ht.at("k").get<std::size_t>();
    cert.conjugators = parse_words(alpha, ht.at("conjugators"));
    cert.witness = alpha.parse(ht.at("witness").get<std::string>());
    if (cert.conjugators.size() != cert.k) fail("conjugator count differs from k");
    if (!verify_height_certificate(h, cert)) fail("height certificate does not verify");
    if (schema == kCertificateSchema) return res;

    const Word g = alpha.parse(input.at("g").get<std::string>());
    if (h.contains(g)) fail("g lies in H");
    std::vector<SubgroupGraph> core;
    for (const auto& e : doc.at("malnormal_core").at("entries")) {
      core.push_back(SubgroupGraph::from_generators(rank, parse_words(alpha, e.at("generators"))));
      if (!is_subgroup_of(core.back(), h)) fail("core entry is not a subgroup of H");
    }
    PeripheralStructure p{rank, {}};
    for (const auto& e : doc.at("induced_structure").at("peripherals")) {
      p.peripherals.push_back(Peripheral::from_generators(rank, parse_words(alpha, e.at("generators"))));
    }
    for (const auto& c : doc.at("induced_structure").at("corrections")) {
      const auto i = c.at("core_entry").get<std::size_t>();
      const auto j = c.at("peripheral").get<std::size_t>();
      const Word cw = alpha.parse(c.at("c").get<std::string>());
      if (i >= core.size() || j >= p.size() ||
          !is_subgroup_of(core[i], conjugate(p.peripherals[j].group, cw))) {
        fail("core entry " + std::to_string(i) + " is not inside its corrected peripheral");
      }
    }
    const Json& filling = doc.at("filling");
    if (filling.at("exponent").is_null()) return res;
    FillingSpec spec{parse_words(alpha, filling.at("kernels"))};
    spec.validate(p);
    const auto q = QuotientPresentation::build(p, spec);
    const Json& sep = doc.at("separation");
    const Json& col = sep.at("collision_search").at("collision");
    if (!col.is_null()) {
      const Word w = alpha.parse(col.get<std::string>());
      if (!h.contains(w) || !q.equal(w, g)) fail("reported collision does not replay");
    }
    if (sep.at("separated").get<bool>()) {
      if (!col.is_null()) fail("separated despite a collision");
      if (q.has_normal_form() && ImageSubgroup(q, h).contains(g)) {
        fail("pi(g) lies in pi(H)");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("malformed certificate: ") + e.what());
  }
  return res;
}

VerifyResult verify_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("malformed JSON: ") + e.what());
  }
  return verify_certificate(doc);
}

}  // namespace cuspfill
