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

// Freely reduced words in a finitely generated free group F(S).
//
// A letter is encoded as 2 * generator + (inverse ? 1 : 0), so comparing
// codes gives the ShortLex letter order x < x^-1 < y < y^-1 < ...  Every
// Word is freely reduced by construction.

#ifndef CUSPFILL_WORD_HPP_
#define CUSPFILL_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cuspfill {

struct Letter {
  std::uint16_t code = 0;

  static constexpr Letter of(int generator, bool inverse = false) {
    return Letter{static_cast<std::uint16_t>(2 * generator + (inverse ? 1 : 0))};
  }
  constexpr int generator() const { return code >> 1; }
  constexpr bool is_inverse() const { return (code & 1U) != 0; }
  constexpr Letter inverse() const {
    return Letter{static_cast<std::uint16_t>(code ^ 1U)};
  }
  constexpr auto operator<=>(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(static_cast<std::uint16_t>(rank)) {}

  /// Freely reduces `raw`; throws MalformedInput on a generator >= rank.
  Word(int rank, std::span<const Letter> raw);
  Word(int rank, std::initializer_list<Letter> raw)
      : Word(rank, std::span<const Letter>(raw.begin(), raw.size())) {}

  static Word letter(int rank, Letter x) { return Word(rank, {x}); }
  static Word generator(int rank, int g, int exponent = 1);

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word subword(std::size_t pos, std::size_t len) const;

  /// ShortLex: shorter first, then lexicographic in letter code.
  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  std::vector<Letter> letters_;
  std::uint16_t rank_ = 0;
};

/// Stack-based free reduction of an arbitrary letter sequence.
Word free_reduce(int rank, std::span<const Letter> raw);

/// Freely reduced product uv.  Throws MalformedInput when ranks differ.
Word concat(const Word& u, const Word& v);
inline Word operator*(const Word& u, const Word& v) { return concat(u, v); }

Word invert(const Word& u);

/// u^k for any integer k (k < 0 uses the inverse).
Word power(const Word& u, long k);

/// g u g^-1.
Word conjugate_by(const Word& u, const Word& g);

struct CyclicDecomposition {
  Word core;        // cyclically reduced
  Word conjugator;  // input = conjugator * core * conjugator^-1
};
CyclicDecomposition cyclic_reduce(const Word& u);

bool is_cyclically_reduced(const Word& u);

struct RootDecomposition {
  Word root;
  long exponent = 1;  // input = root^exponent, exponent maximal
};
/// Throws PreconditionError on the empty word.
RootDecomposition root(const Word& u);

/// Image of w under the homomorphism sending generator i to images[i];
/// the result lives in F(target_rank).
Word substitute(const Word& w, const std::vector<Word>& images, int target_rank);

/// Total exponent sum of generator g.
long exponent_sum(const Word& u, int generator);

/// The ordered generator names.  ASCII words use lowercase letters for
/// generators and uppercase for their inverses, so names must be single
/// lowercase letters for parse/format to work.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);
  /// a, b, c, ... of the given rank (1..26).
  static Alphabet standard(int rank);
  /// Parses "ab" as the alphabet {a, b}.
  static Alphabet from_string(std::string_view letters);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int generator) const { return names_.at(generator); }
  const std::vector<std::string>& names() const { return names_; }

  /// "baaaB" -> b a^3 b^-1; "1" or "" -> identity.  Input is reduced.
  Word parse(std::string_view text) const;
  std::vector<Word> parse_list(std::string_view comma_separated) const;
  std::string format(const Word& w) const;
  std::string to_string() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// ASCII rendering with the standard alphabet; "1" for the identity.
std::string to_string(const Word& w);

/// Parses an ASCII word over the standard alphabet of the given rank.
Word parse_word(int rank, std::string_view text);

/// Calls fn(w) for every reduced word of length <= max_length in ShortLex
/// order.  fn returns false to stop early.
void for_each_reduced_word(int rank, std::size_t max_length,
                           const std::function<bool(const Word&)>& fn);

/// All reduced words of length <= radius, ShortLex ordered.
std::vector<Word> word_ball(int rank, std::size_t radius);

}  // namespace cuspfill

template <>
struct std::hash<cuspfill::Word> {
  std::size_t operator()(const cuspfill::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL ^ static_cast<std::size_t>(w.rank());
    for (auto x : w) {
      h ^= x.code + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

#endif  // CUSPFILL_WORD_HPP_
