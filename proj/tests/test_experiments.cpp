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


#include <algorithm>
#include <sstream>

#include "cuspfill/errors.hpp"
#include "cuspfill/experiments.hpp"
#include "doctest.h"
#include "quotient_oracles.hpp"

using namespace cuspfill;

namespace {

Word w2(const char* s) { return parse_word(2, s); }

PipelineConfig config(const std::string& text) {
  std::istringstream in(text);
  return PipelineConfig::from_map(parse_config(in));
}

const char* kExample = "H = aa, baaaB\ng = b\n";

}  // namespace

TEST_CASE("config parsing") {
  const auto c = config("# comment\nH = aa, baaaB  # trailing\ng = b\nR = 2\nexponents = 6,12\n");
  CHECK(c.h_generators == std::vector<std::string>{"aa", "baaaB"});
  CHECK(c.R == 2);
  CHECK(c.sweep_exponents == std::vector<long>{6, 12});
  CHECK_THROWS_AS(config("H aa\n"), MalformedInput);
  CHECK_THROWS_AS(config("H = aa\nbogus = 1\n"), MalformedInput);
  CHECK_THROWS_AS(config("H = aa\nR = x\n"), MalformedInput);
  CHECK_THROWS_AS(config("H = aa\nR = -1\n"), MalformedInput);
  CHECK_THROWS_AS(run_pipeline(config("g = b\n")), MalformedInput);
}

TEST_CASE("pipeline on the worked example") {
  const auto r = run_pipeline(config(kExample));
  CHECK(r["schema"] == kReportSchema);
  CHECK(r["height"]["k"] == 5);
  CHECK(r["height"]["witness"] == "aaaaaa");
  CHECK(r["height"]["verified"] == true);
  CHECK(r["induced_structure"]["peripherals"][0]["generators"] == Json::array({"a"}));
  CHECK(r["filling"]["least_h_filling_exponent"] == 6);
  CHECK(r["filling"]["exponent"] == 6);
  CHECK(r["quotient"]["backend"] == "FREE_PRODUCT");
  CHECK(r["separation"]["exact_verdict"] == true);
  CHECK(r["separation"]["collision_search"]["collision"].is_null());
  CHECK(r["height_decrease"]["found"] == false);
  CHECK(r["height_decrease"]["exactness"] == "bounded(4)");
  CHECK(r["verdict"]["all_positive"] == true);
  CHECK(verify_certificate(r).ok);
}

TEST_CASE("pipeline preconditions and the malnormal case") {
  CHECK_THROWS_AS(run_pipeline(config("H = aa, baaaB\ng = aa\n")), PreconditionError);
  const auto r = run_pipeline(config("H = a\ng = b\n"));
  CHECK(r["height"]["k"] == 1);
  // <a,b|a^n> with n <= 4 identifies two elements of the 2-ball (a^i = a^(i-n)).
  CHECK(r["filling"]["exponent"] == 5);
  CHECK(r["separation"]["separated"] == true);
  CHECK(r["verdict"]["all_positive"] == true);
}

TEST_CASE("no exponent in range") {
  const auto r = run_pipeline(config(std::string(kExample) + "exponent_max = 5\n"));
  CHECK(r["filling"]["exponent"].is_null());
  CHECK(r["verdict"]["all_positive"] == false);
}

TEST_CASE("sweep") {
  const auto text = std::string(kExample) + "exponents = 2,4,6,8,10,12\nradii = 2,3\n";
  auto c = config(text);
  const auto csv = run_sweep(c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "exponent,radius,h_filling,ball_injective,peripheral_injective,separated");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string e, r, hf, inj, pinj, sep;
    std::getline(row, e, ',');
    std::getline(row, r, ',');
    std::getline(row, hf, ',');
    std::getline(row, inj, ',');
    std::getline(row, pinj, ',');
    std::getline(row, sep, ',');
    const long n = std::stol(e);
    const long rad = std::stol(r);
    CHECK(hf == (n % 6 == 0 ? "true" : "false"));
    CHECK(inj == (n > 2 * rad ? "true" : "false"));
    CHECK(pinj == "true");
    ++rows;
  }
  CHECK(rows == 12);
  c.threads = 4;
  CHECK(run_sweep(c) == csv);
  CHECK(run_sweep(config(kExample)) ==
        "exponent,radius,h_filling,ball_injective,peripheral_injective,separated\n");
}

TEST_CASE("reports are deterministic") {
  auto c = config(kExample);
  const auto a = run_pipeline(c).dump();
  CHECK(run_pipeline(c).dump() == a);
  c.threads = 4;
  c.seed = 99;
  CHECK(run_pipeline(c).dump() == a);
}

TEST_CASE("quotient height search") {
  const std::vector<Word> gens{w2("aa"), w2("baaaB")};
  const auto h = SubgroupGraph::from_generators(2, gens);
  SUBCASE("a^6 filling: no five conjugates") {
    const auto q = QuotientPresentation::build(2, {power(w2("a"), 6)});
    const auto s = quotient_height_search(q, h, 5, 4, 8);
    CHECK_FALSE(s.found);
    CHECK(s.exactness.to_string() == "bounded(4)");
    CHECK(s.best == oracle::max_conjugates_with_common_power(q, gens, 4, 8));
  }
  SUBCASE("a long filling away from H keeps height 5") {
    // Positive control: b^50 does not touch the 4-ball, so the free-group
    // certificate survives.
    const auto q = QuotientPresentation::build(2, {power(w2("b"), 50)});
    const auto s = quotient_height_search(q, h, 5, 4, 8);
    REQUIRE(s.found);
    CHECK(s.conjugators.size() == 5);
    CHECK(oracle::max_conjugates_with_common_power(q, gens, 4, 8) >= 5);
  }
}

TEST_CASE("certificate verification") {
  const auto cert = run_height(config(kExample));
  CHECK(cert["schema"] == kCertificateSchema);
  CHECK(verify_certificate(cert).ok);

  auto perturbed = cert;
  perturbed["conjugators"][3] = "ab";
  CHECK_FALSE(verify_certificate(perturbed).ok);

  auto hand = Json::parse(R"({"schema": "cuspfill.certificate/1", "alphabet": "ab",
    "H": ["aa", "baaaB"], "k": 5, "witness": "aaaaaa",
    "conjugators": ["1", "a", "B", "aB", "aaB"]})");
  CHECK(verify_certificate(hand).ok);
  // The same list with b in place of b^-1 is not a certificate.
  hand["conjugators"][2] = "b";
  CHECK_FALSE(verify_certificate(hand).ok);

  auto report = run_pipeline(config(kExample));
  report["separation"]["collision_search"]["collision"] = "aa";
  CHECK_FALSE(verify_certificate(report).ok);

  CHECK_THROWS_AS(verify_certificate(Json::parse(R"({"schema": "cuspfill.certificate/1"})")),
                  MalformedInput);
  CHECK_THROWS_AS(verify_certificate_file("/nonexistent/cert.json"), MalformedInput);
}
