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

#ifndef CUSPFILL_GEODESIC_DIAGNOSTICS_HPP_
#define CUSPFILL_GEODESIC_DIAGNOSTICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cuspfill/cusped_space.hpp"
#include "cuspfill/filling.hpp"
#include "cuspfill/peripheral.hpp"

namespace cuspfill {

// Run parameters.  Thresholds derive from L, D_thresh and the supplied
// (doubled) delta estimate:
//   penetration depth   D_thresh - 10 delta - 2   (at least 1)
//   deep entry/exit     d(g1, g2) >= 2 D_thresh - 20 delta - 4
//   short return        d(g1, g2 n) <= 2 L + 3
struct DiagnosticParams {
  long L = 0;
  long D_thresh = 1;
  long twice_delta = 0;
  std::size_t tube_radius = 2;  // for tubes built around words
  int depth = 6;                // horoball depth of those tubes
  long max_kernel_power = 4;    // n ranges over kernel^j, 0 < |j| <= this

  long penetration_depth() const;
  long deep_threshold() const;
  long return_threshold() const { return 2 * L + 3; }
};

enum class DichotomyCase { kShortcuttable, kDeepShortReturn, kInconclusive };
std::string to_string(DichotomyCase c);

struct DichotomyReport {
  DichotomyCase kind = DichotomyCase::kShortcuttable;
  // Case 1: the projected path, as vertex names of the quotient tube.
  std::vector<std::string> path;
  // Case 2.
  std::size_t peripheral = 0;
  Word coset_rep;
  Word g1, g2, n;
  long entry_exit = 0;    // d_X(g1, g2)
  long short_return = 0;  // d_X(g1, g2 n)
  // Inconclusive.
  std::string reason;
  int offending_depth = -1;
};

// Rewrites each stretch of `gamma` that stays in one closed horoball, entry
// and exit on group elements, as up m / across / down m whenever that is no
// longer (m chosen as in the horoball module, deepest on ties).
std::vector<TruncatedCuspedSpace::Id> regularize_path(
    const TruncatedCuspedSpace& x, const std::vector<TruncatedCuspedSpace::Id>& gamma);

// Classifies the regularized ShortLex BFS geodesic from 1 to h in the tube about h.
// The filled quotient tube is built about the images of the geodesic's
// group elements.
DichotomyReport classify_geodesic(const PeripheralStructure& p, const FillingSpec& spec,
                                  const Word& h, const DiagnosticParams& params);

// Same, for an explicit path in a free-group space x.
DichotomyReport classify_path(const TruncatedCuspedSpace& x, const FillingSpec& spec,
                              const std::vector<TruncatedCuspedSpace::Id>& gamma,
                              const DiagnosticParams& params);

// Bounded under-approximation of the normal closure of the induced kernels
// in H: generated by h k h^-1 for kernel generators k and h in H of length
// at most `bound` in H's free basis.
struct KernelClosure {
  SubgroupGraph group;
  Exactness exactness;
};
KernelClosure kernel_closure(const SubgroupGraph& h, const std::vector<KernelGraph>& kernels,
                             std::size_t bound);

// k = g2 n g2^-1 from a case-2 report, if it lies in the closure and
// |kh|_X < |h|_X.
std::optional<Word> shorten_witness(const PeripheralStructure& p, const KernelClosure& k_h,
                                    const HFillingResult& filling, const Word& h,
                                    const DichotomyReport& report, const DiagnosticParams& params);

struct ShorteningStep {
  Word h;
  long length = 0;  // |h|_X
  Word k;           // empty on the last step
};
// Iterates classify + shorten until no witness is found.
std::vector<ShorteningStep> shorten_fully(const PeripheralStructure& p, const FillingSpec& spec,
                                          const KernelClosure& k_h, const HFillingResult& filling,
                                          const Word& h, const DiagnosticParams& params,
                                          std::size_t max_steps = 64);

}  // namespace cuspfill

#endif  // CUSPFILL_GEODESIC_DIAGNOSTICS_HPP_
