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


// One PASS/FAIL line per acceptance criterion.  Each suite also returns a
// JSON report of what it measured; the last criterion reruns every suite
// and compares those reports byte for byte.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cuspfill/cusped_space.hpp"
#include "cuspfill/experiments.hpp"
#include "cuspfill/geodesic_diagnostics.hpp"
#include "cuspfill/horoball.hpp"
#include "cuspfill/parallel.hpp"
#include "cuspfill/peripheral.hpp"
#include "oracles.hpp"
#include "quotient_oracles.hpp"

using namespace cuspfill;

namespace {

Word w2(const char* s) { return parse_word(2, s); }

struct Outcome {
  bool pass = false;
  std::string detail;
  Json report;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double x, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

const std::vector<Word> kHGens{w2("aa"), w2("baaaB")};

SubgroupGraph example_h() { return SubgroupGraph::from_generators(2, kHGens); }

PeripheralStructure cyclic_a() {
  PeripheralStructure p;
  p.rank = 2;
  p.peripherals.push_back(Peripheral::from_generators(2, {w2("a")}));
  return p;
}

QuotientPresentation letter_quotient(long n) {
  return QuotientPresentation::build(2, {power(w2("a"), n)});
}

// 1. Worked example at L = 6.
Outcome golden(unsigned) {
  const Stopwatch clock;
  const auto h = example_h();
  const auto cert = height(h, 6);
  const auto core = malnormal_core(h, 6);
  const auto ind = induced_peripheral_structure(h, core, 6);
  const double secs = clock.seconds();

  // The published list with its b corrected to b^-1, compared coset by coset.
  const std::vector<Word> expected{w2("1"), w2("a"), w2("B"), w2("aB"), w2("aaB")};
  bool cosets_match = cert.conjugators.size() == expected.size();
  for (std::size_t i = 0; cosets_match && i < expected.size(); ++i) {
    cosets_match = h.contains(invert(cert.conjugators[i]) * expected[i]);
  }
  HeightCertificate literal{5, {w2("1"), w2("a"), w2("b"), w2("aB"), w2("aaB")}, w2("aaaaaa"),
                            Exactness::exact_result()};
  const bool literal_rejected = !verify_height_certificate(h, literal);

  const bool core_ok = core.entries.size() == 2 &&
                       core.entries[0].group == SubgroupGraph::from_generators(2, {w2("aa")}) &&
                       core.entries[1].group == SubgroupGraph::from_generators(2, {w2("baaaB")});
  const bool p_ok = ind.structure.size() == 1 &&
                    ind.structure.peripherals[0].group == cyclic_a().peripherals[0].group;
  const bool pass = cert.k == 5 && cert.witness == w2("aaaaaa") &&
                    verify_height_certificate(h, cert) && cosets_match && literal_rejected &&
                    core_ok && p_ok && secs < 10.0;
  Json r;
  r["k"] = cert.k;
  Json conj = Json::array();
  for (const auto& c : cert.conjugators) conj.push_back(to_string(c));
  r["conjugators"] = conj;
  r["witness"] = to_string(cert.witness);
  r["cosets_match_corrected_list"] = cosets_match;
  r["literal_list_rejected"] = literal_rejected;
  r["core_ok"] = core_ok;
  r["peripheral_ok"] = p_ok;
  return {pass,
          "height " + std::to_string(cert.k) + ", witness " + to_string(cert.witness) +
              ", core and P match, " + fixed(secs) + " s (limit 10 s)",
          r};
}

// 2. Stallings membership against products of generators.
Outcome membership(unsigned threads) {
  // Products whose prefixes stay within length 11: complete for this family
  // (cap 12 gives the same result).
  constexpr std::size_t kCap = 11;
  auto gens = word_ball(2, 3);
  gens.erase(gens.begin());
  std::set<std::vector<Word>> sets;
  for (const auto& u0 : gens) {
    for (const auto& v0 : gens) {
      Word u = std::min(u0, invert(u0));
      Word v = std::min(v0, invert(v0));
      if (v < u) std::swap(u, v);
      sets.insert(u == v ? std::vector<Word>{u} : std::vector<Word>{u, v});
    }
  }
  const std::vector<std::vector<Word>> subgroups(sets.begin(), sets.end());
  const auto tests = word_ball(2, 8);
  std::vector<std::size_t> mismatches(subgroups.size(), 0);
  parallel_for(subgroups.size(), threads, [&](std::size_t i) {
    const auto h = SubgroupGraph::from_generators(2, subgroups[i]);
    const oracle::SubgroupBall ball(2, subgroups[i], kCap);
    for (const auto& w : tests) mismatches[i] += h.contains(w) != ball.contains(w);
  });
  std::size_t total = 0;
  for (auto m : mismatches) total += m;
  Json r = {{"subgroups", subgroups.size()},
            {"test_words", tests.size()},
            {"oracle_cap", kCap},
            {"mismatches", total}};
  return {total == 0,
          std::to_string(subgroups.size()) + " subgroups x " + std::to_string(tests.size()) +
              " words, " + std::to_string(total) + " mismatches",
          r};
}

// 3. Horoball metric suite.
Outcome horoball_suite(unsigned) {
  const Stopwatch clock;
  std::size_t violations = 0;
  const TruncatedHoroball p16(BaseGraph::path(16), 6);
  const auto n = static_cast<int>(p16.num_vertices());
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = p16.distance(p16.vertex(i), p16.vertex(j));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      violations += d[i][j] != d[j][i];
      violations += (d[i][j] == 0) != (i == j);
      for (int k = 0; k < n; ++k) violations += d[i][k] > d[i][j] + d[j][k];
    }
  }
  for (int v = 0; v < 16; ++v) {
    for (int w = v + 1; w < 16; ++w) {
      const int base = w - v;
      const int bound = 2 * static_cast<int>(std::ceil(std::log2(base))) + 3;
      violations += p16.distance({v, 0}, {w, 0}) > bound;
    }
  }
  std::size_t regular_pairs = 0;
  for (std::size_t len = 1; len <= 64; ++len) {
    const TruncatedHoroball h(BaseGraph::path(len), 6);
    const int m = static_cast<int>(len);
    for (int v = 0; v < m; ++v) {
      for (int w = 0; w < m; ++w) {
        const auto g = h.regular_geodesic({v, 0}, {w, 0});
        const int dist = h.distance({v, 0}, {w, 0});
        bool ok = static_cast<int>(g.length()) == dist && g.gap == 0 &&
                  g.path.front() == HoroVertex{v, 0} && g.path.back() == HoroVertex{w, 0};
        for (std::size_t s = 0; ok && s + 1 < g.path.size(); ++s) {
          const auto& nb = h.neighbors(h.id(g.path[s]));
          ok = std::binary_search(nb.begin(), nb.end(), h.id(g.path[s + 1]));
        }
        violations += !ok;
        ++regular_pairs;
      }
    }
  }
  const double secs = clock.seconds();
  Json r = {{"p16_vertices", n}, {"regular_pairs", regular_pairs}, {"violations", violations}};
  return {violations == 0 && secs < 60.0,
          "P16 D=6 exhaustive, " + std::to_string(regular_pairs) + " regular pairs, " +
              std::to_string(violations) + " violations, " + fixed(secs) + " s (limit 60 s)",
          r};
}

// 4. Trusted four-point delta across radii and fillings.
Outcome delta_stability(unsigned threads) {
  DeltaOptions opt;
  opt.trusted_only = true;
  opt.threads = threads;
  PeripheralStructure pa;
  pa.rank = 1;
  pa.peripherals.push_back(Peripheral::from_generators(1, {parse_word(1, "a")}));
  const auto free_a = GroupModel::free_group(1);
  const auto d8 = estimate_delta(TruncatedCuspedSpace::build(free_a, pa, 8, 5), opt);
  const auto d10 = estimate_delta(TruncatedCuspedSpace::build(free_a, pa, 10, 5), opt);
  Json r;
  r["free_a"] = {{"R8", d8.twice_delta},
                 {"R10", d10.twice_delta},
                 {"quadruples_R8", d8.quadruples},
                 {"quadruples_R10", d10.quadruples}};
  bool pass = d8.exhaustive && d10.exhaustive && d8.quadruples > 0 &&
              d8.twice_delta == d10.twice_delta;
  std::string detail = "F(a): " + d8.to_string() + " at R=8, " + d10.to_string() + " at R=10; ";
  std::set<long> values;
  Json quot = Json::array();
  for (long n : {6L, 12L, 18L}) {
    const auto x = TruncatedCuspedSpace::build(GroupModel::quotient(letter_quotient(n)),
                                               cyclic_a(), 3, 4);
    const auto d = estimate_delta(x, opt);
    pass = pass && d.exhaustive && d.quadruples > 0;
    values.insert(d.twice_delta);
    quot.push_back({{"n", n}, {"twice_delta", d.twice_delta}, {"quadruples", d.quadruples}});
    detail += "n=" + std::to_string(n) + ": " + d.to_string() + " ";
  }
  r["letter_quotients_R3_D4"] = quot;
  pass = pass && values.size() == 1;
  detail += "(trusted quadruples only)";
  return {pass, detail, r};
}

// 5. Injectivity radii of <a,b | a^n>.
Outcome injectivity(unsigned) {
  std::size_t mismatches = 0;
  std::size_t cases = 0;
  bool peripheral_ok = true;
  const auto p = cyclic_a();
  for (long n = 1; n <= 24; ++n) {
    const auto q = letter_quotient(n);
    for (std::size_t R = 1; R <= 5; ++R) {
      const auto ball = word_ball(2, R);
      std::set<Word> images;
      for (const auto& w : ball) images.insert(oracle::letter_power_nf(w, n));
      const bool oracle_ok = images.size() == ball.size();
      const bool got = ball_injectivity_check(q, ball).ok;
      mismatches += got != oracle_ok || got != (n > static_cast<long>(2 * R));
      ++cases;
    }
    peripheral_ok = peripheral_ok &&
                    peripheral_injectivity_check(q, p.peripherals[0], power(w2("a"), n),
                                                 static_cast<std::size_t>(2 * n));
  }
  Json r = {{"cases", cases}, {"mismatches", mismatches}, {"peripheral_ok", peripheral_ok}};
  return {mismatches == 0 && peripheral_ok,
          std::to_string(cases) + " (n, R) cases, " + std::to_string(mismatches) +
              " mismatches; peripheral check at 2n " + (peripheral_ok ? "true" : "false") +
              " for n <= 24",
          r};
}

// 6. H-fillings of the worked example.
Outcome h_filling(unsigned) {
  const auto h = example_h();
  const auto core = malnormal_core(h, 6);
  const auto p = cyclic_a();
  // Oracle: every g with |g| <= 6 such that g a^m g^-1 is in H for some
  // 0 < m <= 12 must also have g a^n g^-1 in H.
  std::vector<Word> meeting;
  for (const auto& g : word_ball(2, 6)) {
    for (long m = 1; m <= 12; ++m) {
      if (h.contains(conjugate_by(power(w2("a"), m), g))) {
        meeting.push_back(g);
        break;
      }
    }
  }
  std::size_t mismatches = 0;
  std::string passing;
  for (long n = 1; n <= 36; ++n) {
    bool expected = true;
    for (const auto& g : meeting) expected = expected && h.contains(conjugate_by(power(w2("a"), n), g));
    const bool got = is_h_filling(h, p, {{power(w2("a"), n)}}, core, 6).ok;
    mismatches += got != expected || got != (n % 6 == 0);
    if (got) passing += (passing.empty() ? "" : ",") + std::to_string(n);
  }
  Json r = {{"passing", passing}, {"mismatches", mismatches}};
  return {mismatches == 0, "true exactly at n = " + passing + "; " + std::to_string(mismatches) +
                               " mismatches", r};
}

// 7. Separating b from H in <a,b | a^(6k)>.
Outcome separation(unsigned threads) {
  bool pass = true;
  std::string detail;
  Json r = Json::array();
  for (long k = 1; k <= 3; ++k) {
    const long n = 6 * k;
    PipelineConfig c;
    c.h_generators = {"aa", "baaaB"};
    c.g = "b";
    c.exponent_min = n;
    c.exponent_max = n;
    c.threads = threads;
    const Stopwatch clock;
    const auto rep = run_pipeline(c);
    const double secs = clock.seconds();
    // Independent: b is not among the images of H-products of length <= 12.
    const auto ball = oracle::quotient_subgroup_ball(
        2, kHGens, 12, [n](const Word& w) { return oracle::letter_power_nf(w, n); });
    const bool oracle_sep = ball.count(oracle::pack(oracle::letter_power_nf(w2("b"), n))) == 0;
    const auto& sep = rep["separation"];
    const bool ok = rep["filling"]["exponent"] == n && sep["exactness"] == "exact" &&
                    sep["exact_verdict"] == true &&
                    sep["collision_search"]["collision"].is_null() && sep["separated"] == true &&
                    oracle_sep && secs < 60.0;
    pass = pass && ok;
    r.push_back({{"n", n}, {"separation", sep}});
    detail += "n=" + std::to_string(n) + " " + (ok ? "separated" : "NOT separated") + " (" +
              std::to_string(sep["collision_search"]["elements_checked"].get<std::size_t>()) +
              " H-elements, " + fixed(secs) + " s); ";
  }
  detail += "limit 60 s each";
  return {pass, detail, r};
}

// 8. Iterated shortening in K_H-cosets.
Outcome shortening(unsigned) {
  const auto h = example_h();
  const auto core = malnormal_core(h, 6);
  const auto ind = induced_peripheral_structure(h, core, 6);
  const auto spec = FillingSpec::uniform_power(ind.structure, 6);
  const auto filling = is_h_filling(h, ind.structure, spec, core, 6);
  const auto kh = kernel_closure(h, induced_filling_kernels(core, ind, spec), 2);
  DiagnosticParams params;
  params.L = 1;
  params.D_thresh = 1;
  const auto model = GroupModel::free_group(2);
  auto len = [&](const Word& g) {
    return cusped_length(model, ind.structure, g, params.tube_radius, params.depth).distance;
  };
  // Oracle kernel elements: products of at most two closure generators.
  std::vector<Word> gens;
  for (const auto& g : kh.group.generators()) {
    gens.push_back(g);
    gens.push_back(invert(g));
  }
  std::vector<Word> kernel{Word(2)};
  for (const auto& x : gens) {
    kernel.push_back(x);
    for (const auto& y : gens) kernel.push_back(x * y);
  }
  const std::vector<Word> ks{w2("aaaaaa"), w2("AAAAAA"), w2("baaaaaaB"), w2("bAAAAAAB"),
                             w2("aaaaaabaaaaaaB")};
  const std::vector<Word> h0{Word(2), w2("aa"), w2("AA"), w2("baaaB"), w2("aabaaaB")};
  std::size_t cases = 0;
  std::size_t good = 0;
  Json chains = Json::array();
  for (const auto& k : ks) {
    for (const auto& x : h0) {
      const auto steps = shorten_fully(ind.structure, spec, kh, filling, k * x, params);
      bool ok = !steps.empty() && filling.ok;
      for (std::size_t i = 0; ok && i + 1 < steps.size(); ++i) {
        ok = steps[i + 1].length < steps[i].length && kh.group.contains(steps[i].k);
      }
      const Word& last = steps.back().h;
      const long best = len(last);
      for (const auto& kk : kernel) ok = ok && len(kk * last) >= best;
      Json chain = Json::array();
      for (const auto& s : steps) chain.push_back({to_string(s.h), s.length});
      chains.push_back(chain);
      good += ok;
      ++cases;
    }
  }
  Json r = {{"cases", cases}, {"good", good}, {"chains", chains}};
  return {cases >= 20 && good == cases,
          std::to_string(good) + "/" + std::to_string(cases) +
              " chains strictly decreasing and ending at a shortest representative",
          r};
}

// 9. No height-5 certificate for pi(H) in <a,b | a^6>.
Outcome height_decrease(unsigned) {
  const auto q = letter_quotient(6);
  const auto s = quotient_height_search(q, example_h(), 5, 4, 8);
  const auto oracle_best = oracle::max_conjugates_with_common_power(q, kHGens, 4, 8);
  const bool pass = !s.found && s.exactness.to_string() == "bounded(4)" && oracle_best < 5 &&
                    s.best == oracle_best;
  Json r = {{"found", s.found},
            {"most_cosets", s.best},
            {"oracle_most_cosets", oracle_best},
            {"exactness", s.exactness.to_string()}};
  return {pass,
          std::string(s.found ? "found" : "no") + " 5 conjugates (at most " +
              std::to_string(s.best) + " share a power), tagged " + s.exactness.to_string(),
          r};
}

struct Criterion {
  const char* name;
  std::function<Outcome(unsigned)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"golden example", golden},
      {"Stallings membership", membership},
      {"horoball metric", horoball_suite},
      {"delta stability", delta_stability},
      {"filling injectivity", injectivity},
      {"H-filling characterization", h_filling},
      {"separation", separation},
      {"shortening", shortening},
      {"height decrease", height_decrease},
  };
  int failures = 0;
  auto line = [&](std::size_t i, const char* name, bool pass, const std::string& detail) {
    std::printf("%s [%zu] %s: %s\n", pass ? "PASS" : "FAIL", i, name, detail.c_str());
    std::fflush(stdout);
    failures += !pass;
  };

  std::vector<std::string> first;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run(1);
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    line(i + 1, criteria[i].name, o.pass, o.detail);
    first.push_back(o.report.dump());
  }

  std::size_t differing = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    for (unsigned threads : {1U, 4U}) {
      std::string again;
      try {
        again = criteria[i].run(threads).report.dump();
      } catch (const std::exception& e) {
        again = e.what();
      }
      differing += again != first[i];
    }
  }
  line(criteria.size() + 1, "determinism", differing == 0,
       std::to_string(criteria.size()) + " reports rerun at 1 and 4 threads, " +
           std::to_string(differing) + " differ");
  return failures == 0 ? 0 : 1;
}
