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

#ifndef CUSPFILL_EXPERIMENTS_HPP_
#define CUSPFILL_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspfill/filling.hpp"
#include "cuspfill/peripheral.hpp"
#include "json.hpp"

namespace cuspfill {

inline constexpr const char* kReportSchema = "cuspfill.report/1";
inline constexpr const char* kCertificateSchema = "cuspfill.certificate/1";

using Json = nlohmann::ordered_json;

// key=value lines; '#' starts a comment.  Unknown keys are rejected by
// PipelineConfig::from_map.
std::map<std::string, std::string> parse_config(std::istream& in);

struct PipelineConfig {
  std::string alphabet = "ab";
  std::vector<std::string> h_generators;
  std::string g;
  std::size_t L = 6;                  // conjugator / coset searches
  std::size_t R = 3;                  // quotient cusped space radius
  int D = 4;                          // and depth
  long exponent_min = 1;
  long exponent_max = 36;
  std::size_t injectivity_radius = 2;
  std::size_t separation_margin = 6;  // collision budget = |g| + margin
  std::size_t height_bound = 4;       // stage 8 coset bound
  std::size_t witness_length = 8;     // stage 8 candidate intersection elements
  std::size_t closure_bound = 2;      // K_H closure conjugator length
  std::vector<long> sweep_exponents;  // sweep grid
  std::vector<std::size_t> sweep_radii;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  static PipelineConfig from_map(const std::map<std::string, std::string>& kv);
  Json to_json() const;
};

// Throws PreconditionError when g lies in H.
Json run_pipeline(const PipelineConfig& config);

// One CSV row per (exponent, radius) in grid order.
std::string run_sweep(const PipelineConfig& config);

// Height certificate of H alone, in the certificate schema.
Json run_height(const PipelineConfig& config);

// Keys: alphabet, P (one cyclic peripheral generator per entry), relators
// (optional; empty means the free group), R, D, trusted_only, samples
// (0 = exhaustive).
struct DeltaConfig {
  std::string alphabet = "ab";
  std::vector<std::string> peripherals;
  std::vector<std::string> relators;
  std::size_t R = 3;
  int D = 4;
  bool trusted_only = true;
  std::size_t samples = 0;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  static DeltaConfig from_map(const std::map<std::string, std::string>& kv);
};
Json run_delta(const DeltaConfig& config);

// Exhaustive search for k essentially distinct conjugates of pi(H) whose
// intersection contains an infinite-order element.  Conjugators have length
// at most `bound`; intersection candidates are H-words of length at most
// `witness_length` with infinite order in the quotient.
struct QuotientHeightSearch {
  bool found = false;
  std::size_t best = 0;  // largest number of distinct cosets seen
  Word witness;
  std::vector<Word> conjugators;
  Exactness exactness;
};
QuotientHeightSearch quotient_height_search(const QuotientPresentation& q, const SubgroupGraph& h,
                                            std::size_t k, std::size_t bound,
                                            std::size_t witness_length);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failures;
};
// Replays a height certificate or a pipeline report from primitives.
VerifyResult verify_certificate(const Json& doc);
VerifyResult verify_certificate_file(const std::string& path);

}  // namespace cuspfill

#endif  // CUSPFILL_EXPERIMENTS_HPP_
