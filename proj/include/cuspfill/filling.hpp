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

// Dehn filling quotients F / <<n_1, ..., n_m>> with a decidable word
// problem.  Two backends:
//
//   FREE_PRODUCT        every relator is a power of one generator; the
//                       quotient is a free product of cyclic groups and
//                       syllable normal forms are exact and geodesic.
//   SMALL_CANCELLATION  the symmetrized relators satisfy C'(1/6); Dehn's
//                       algorithm decides triviality.

#ifndef CUSPFILL_FILLING_HPP_
#define CUSPFILL_FILLING_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuspfill/peripheral_structure.hpp"
#include "cuspfill/subgroup_graph.hpp"
#include "cuspfill/word.hpp"

namespace cuspfill {

/// One kernel generator per peripheral; N_i is the normal closure of n_i
/// in P_i (for cyclic P_i = <p> and n_i = p^e this is just <p^e>).  The
/// identity means no filling at that peripheral.
struct FillingSpec {
  std::vector<Word> kernels;

  /// n_i = p_i^e for every cyclic peripheral (p_i its first generator).
  static FillingSpec uniform_power(const PeripheralStructure& p, long e);
  /// Throws MalformedInput on a size mismatch or n_i not in P_i.
  void validate(const PeripheralStructure& p) const;
};

struct Fraction {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
  bool operator==(const Fraction&) const = default;
};

struct PieceReport {
  bool ok = true;
  /// Largest piece length over the length of a relator containing it.
  Fraction max_ratio;
  /// Symmetrized relator realising the max ratio (empty when no pieces).
  Word worst_relator;
  std::size_t worst_piece = 0;
};

/// Throws MalformedInput on an empty relator.  Relators must be cyclically
/// reduced; pieces are maximal common prefixes of distinct elements of the
/// symmetrized set.
PieceReport check_c_prime_sixth(const std::vector<Word>& relators);

enum class Backend { kFreeProduct, kSmallCancellation };
std::string to_string(Backend b);

class QuotientPresentation {
 public:
  /// Relators are cyclically reduced on entry; empty relators are
  /// dropped.  Throws UnsupportedQuotient when neither backend applies.
  static QuotientPresentation build(int rank, const std::vector<Word>& relators);
  static QuotientPresentation build(const PeripheralStructure& p, const FillingSpec& spec);
  /// Forces a backend; throws UnsupportedQuotient when it does not apply.
  static QuotientPresentation build_with(int rank, const std::vector<Word>& relators, Backend b);

  int rank() const { return rank_; }
  Backend backend() const { return backend_; }
  const std::vector<Word>& relators() const { return relators_; }
  /// Small cancellation only.
  const PieceReport& pieces() const { return pieces_; }

  /// FREE_PRODUCT: order of generator g in the quotient, 0 when infinite.
  long generator_order(int g) const { return orders_.at(static_cast<std::size_t>(g)); }

  bool is_trivial(const Word& w) const;
  bool equal(const Word& u, const Word& v) const { return is_trivial(u * invert(v)); }

  /// Whether normal_form() is a canonical form (FREE_PRODUCT).
  bool has_normal_form() const { return backend_ == Backend::kFreeProduct; }
  /// FREE_PRODUCT: the ShortLex-least geodesic representative, syllable
  /// exponents in (-n/2, n/2].  SMALL_CANCELLATION: the Dehn-reduced word,
  /// which is not canonical.
  Word normal_form(const Word& w) const;
  /// Dehn's algorithm; each step strictly shortens the word.  Returns the
  /// fully reduced word and the number of steps taken.
  std::pair<Word, std::size_t> dehn_reduce(const Word& w) const;

  /// Whether w has infinite order in the quotient (FREE_PRODUCT only:
  /// finite order iff the cyclically reduced normal form is a single
  /// syllable of a torsion generator, or empty).
  bool has_infinite_order(const Word& w) const;

  /// "<a,b | aaaaaa>".
  std::string to_string() const;

 private:
  static QuotientPresentation build_impl(int rank, const std::vector<Word>& relators,
                                         std::optional<Backend> force);

  int rank_ = 1;
  Backend backend_ = Backend::kFreeProduct;
  std::vector<Word> relators_;
  std::vector<long> orders_;
  std::vector<Word> symmetrized_;
  PieceReport pieces_;
};

/// |N_i|_{P_i}; nullopt (INFINITE) for a trivial kernel.  Exact for cyclic
/// P_i; otherwise the shortest kernel element among P-words of length <=
/// bound, nullopt when none is found.
std::optional<long> slope_length(const PeripheralStructure& p, const FillingSpec& spec,
                                 std::size_t i, std::size_t bound = 8);

/// N_i as a subgroup of F.  Cyclic P_i: exact.  Otherwise the subgroup
/// generated by conjugates of n_i by P_i-words of length <= conj_bound, an
/// under-approximation of the normal closure.
struct KernelGraph {
  SubgroupGraph group;
  Exactness exactness;
};
KernelGraph kernel_subgroup(const Peripheral& p, const Word& n, std::size_t conj_bound = 2);

/// Elements of P (as reduced words of F) of F-length <= bound, enumerated
/// through words in the free basis of P.  ShortLex ordered, identity first.
std::vector<Word> peripheral_ball(const Peripheral& p, std::size_t bound);

/// True iff P/N_i -> quotient is injective on the elements of P of length
/// <= bound: p not in N_i implies p nontrivial, and p, q in distinct
/// N_i-cosets have distinct images.
bool peripheral_injectivity_check(const QuotientPresentation& q, const Peripheral& p,
                                  const Word& kernel, std::size_t bound);

struct InjectivityResult {
  bool ok = true;
  /// Lexicographically first colliding index pair (i < j), as words.
  std::optional<std::pair<Word, Word>> collision;
};
InjectivityResult ball_injectivity_check(const QuotientPresentation& q,
                                         const std::vector<Word>& elements);

/// Exact membership in the image of a subgroup H of F in a FREE_PRODUCT
/// quotient, by folding the Stallings graph of H modulo the torsion
/// relations.
class ImageSubgroup {
 public:
  /// Throws UnsupportedQuotient for small-cancellation quotients.
  ImageSubgroup(const QuotientPresentation& q, const SubgroupGraph& h);

  bool contains(const Word& w) const;
  std::size_t num_vertices() const { return out_.size() / static_cast<std::size_t>(rank_); }

 private:
  QuotientPresentation q_;
  int rank_;
  std::vector<int> out_;
  std::vector<int> in_;
};

}  // namespace cuspfill

#endif  // CUSPFILL_FILLING_HPP_
