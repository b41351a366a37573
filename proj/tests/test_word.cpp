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

#include <random>

#include "cuspfill/errors.hpp"
#include "cuspfill/word.hpp"
#include "doctest.h"

using cuspfill::Letter;
using cuspfill::Word;

namespace {

Word w2(const char* s) { return cuspfill::parse_word(2, s); }

// Length-2 peephole rewriting until nothing changes: an independent
// reduction oracle.
std::vector<Letter> peephole(std::vector<Letter> v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i] == v[i + 1].inverse()) {
        v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return v;
}

std::vector<Letter> raw(const char* s) {
  std::vector<Letter> out;
  for (const char* p = s; *p; ++p) {
    out.push_back(Letter::of(std::tolower(*p) - 'a', std::isupper(*p) != 0));
  }
  return out;
}

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> code(0, 2 * rank - 1);
  std::vector<Letter> v(static_cast<std::size_t>(len(rng)));
  for (auto& x : v) x = Letter{static_cast<std::uint16_t>(code(rng))};
  return Word(rank, v);
}

}  // namespace

TEST_CASE("free_reduce examples") {
  CHECK(cuspfill::free_reduce(2, raw("abBA")).empty());
  CHECK(cuspfill::free_reduce(2, raw("aa")) == w2("aa"));
  auto r = raw("baaaAAABa");
  auto expect = peephole(r);
  CHECK(cuspfill::free_reduce(2, r) == Word(2, expect));
  CHECK(to_string(cuspfill::free_reduce(2, r)) == "a");
  CHECK_THROWS_AS(cuspfill::free_reduce(2, raw("c")), cuspfill::MalformedInput);
}

TEST_CASE("free_reduce matches the peephole oracle and is idempotent") {
  // every letter sequence of length <= 10 over {a, A, b, B}
  for (int len = 0; len <= 10; ++len) {
    std::vector<Letter> v(static_cast<std::size_t>(len));
    const long total = 1L << (2 * len);
    for (long m = 0; m < total; ++m) {
      for (int i = 0; i < len; ++i) {
        v[static_cast<std::size_t>(i)] = Letter{static_cast<std::uint16_t>((m >> (2 * i)) & 3)};
      }
      Word w(2, v);
      auto expect = peephole(v);
      REQUIRE(std::equal(w.begin(), w.end(), expect.begin(), expect.end()));
      REQUIRE(Word(2, w.letters()) == w);
    }
  }
}

TEST_CASE("concat and invert") {
  CHECK((w2("a") * w2("A")).empty());
  CHECK(w2("aa") * w2("a") == w2("aaa"));
  CHECK(w2("baaaB") * w2("bA") == w2("baa"));
  CHECK(invert(Word(2)).empty());
  CHECK(invert(w2("ab")) == w2("BA"));
  CHECK(invert(w2("aaB")) == w2("bAA"));
  CHECK_THROWS_AS(w2("a") * cuspfill::parse_word(3, "c"), cuspfill::MalformedInput);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 10000; ++t) {
    auto u = random_word(rng, 3, 8);
    auto v = random_word(rng, 3, 8);
    auto w = random_word(rng, 3, 8);
    REQUIRE((u * v) * w == u * (v * w));
    REQUIRE(invert(u * v) == invert(v) * invert(u));
    REQUIRE((u * invert(u)).empty());
    REQUIRE(invert(invert(u)) == u);
    REQUIRE((u * v).size() <= u.size() + v.size());
  }
}

TEST_CASE("cyclic_reduce") {
  auto [c1, t1] = cuspfill::cyclic_reduce(w2("a"));
  CHECK(c1 == w2("a"));
  CHECK(t1.empty());
  auto [c2, t2] = cuspfill::cyclic_reduce(w2("baaaB"));
  CHECK(c2 == w2("aaa"));
  CHECK(t2 == w2("b"));
  auto [c3, t3] = cuspfill::cyclic_reduce(w2("Bab"));
  CHECK(c3 == w2("a"));
  CHECK(t3 == w2("B"));
}

TEST_CASE("root") {
  auto r1 = cuspfill::root(w2("aaaaaa"));
  CHECK(r1.root == w2("a"));
  CHECK(r1.exponent == 6);
  auto r2 = cuspfill::root(w2("ab"));
  CHECK(r2.root == w2("ab"));
  CHECK(r2.exponent == 1);
  auto r3 = cuspfill::root(w2("baaaaaaB"));
  CHECK(r3.root == w2("baB"));
  CHECK(r3.exponent == 6);
  // (ba^3b^-1)^2 = b a^6 b^-1: its root is bab^-1 with exponent 6, and 2 | 6.
  auto r4 = cuspfill::root(cuspfill::power(w2("baaaB"), 2));
  CHECK(r4.exponent % 2 == 0);
  CHECK(cuspfill::power(r4.root, r4.exponent) == cuspfill::power(w2("baaaB"), 2));
  CHECK_THROWS_AS(cuspfill::root(Word(2)), cuspfill::PreconditionError);
}

TEST_CASE("root of a power has exponent divisible by k") {
  for (const auto& u : cuspfill::word_ball(2, 4)) {
    if (u.empty()) continue;
    for (long k = 1; k <= 5; ++k) {
      auto r = cuspfill::root(cuspfill::power(u, k));
      REQUIRE(r.exponent % k == 0);
      REQUIRE(cuspfill::power(r.root, r.exponent) == cuspfill::power(u, k));
      // the root is not itself a proper power
      REQUIRE(cuspfill::root(r.root).exponent == 1);
    }
  }
}

TEST_CASE("ShortLex order and enumeration") {
  CHECK(w2("a") < w2("A"));
  CHECK(w2("A") < w2("b"));
  CHECK(w2("B") < w2("aa"));
  auto ball = cuspfill::word_ball(2, 3);
  CHECK(ball.size() == 1 + 4 + 12 + 36);
  CHECK(std::is_sorted(ball.begin(), ball.end()));
  CHECK(std::adjacent_find(ball.begin(), ball.end()) == ball.end());
}

TEST_CASE("ASCII round trip") {
  CHECK(to_string(Word(2)) == "1");
  CHECK(cuspfill::parse_word(2, "").empty());
  CHECK(cuspfill::parse_word(2, "1").empty());
  CHECK(to_string(w2("baaaB")) == "baaaB");
  CHECK(to_string(w2("aA")) == "1");
  CHECK_THROWS_AS(w2("c"), cuspfill::MalformedInput);
  auto alpha = cuspfill::Alphabet::from_string("xy");
  CHECK(alpha.format(alpha.parse("xyY")) == "x");
  CHECK_THROWS_AS(cuspfill::Alphabet({"x", "x"}), cuspfill::MalformedInput);
  auto list = cuspfill::Alphabet::standard(2).parse_list("aa, baaaB");
  REQUIRE(list.size() == 2);
  CHECK(list[1] == w2("baaaB"));
}
