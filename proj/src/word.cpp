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

#include "cuspfill/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cuspfill/errors.hpp"

namespace cuspfill {

namespace {

void push_reduced(std::vector<Letter>& stack, Letter x) {
  if (!stack.empty() && stack.back() == x.inverse()) {
    stack.pop_back();
  } else {
    stack.push_back(x);
  }
}

}  // namespace

Word::Word(int rank, std::span<const Letter> raw)
    : rank_(static_cast<std::uint16_t>(rank)) {
  letters_.reserve(raw.size());
  for (auto x : raw) {
    if (x.generator() >= rank) {
      throw MalformedInput("generator index " + std::to_string(x.generator()) +
                           " out of range for rank " + std::to_string(rank));
    }
    push_reduced(letters_, x);
  }
}

Word Word::generator(int rank, int g, int exponent) {
  Word w(rank);
  auto x = Letter::of(g, exponent < 0);
  for (int i = 0; i < std::abs(exponent); ++i) {
    w.letters_.push_back(x);
  }
  if (g >= rank) {
    throw MalformedInput("generator index out of range");
  }
  return w;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  return Word(rank_, std::span<const Letter>(letters_).subspan(pos, len));
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(
      letters_.begin(), letters_.end(), other.letters_.begin(),
      other.letters_.end());
}

Word free_reduce(int rank, std::span<const Letter> raw) {
  return Word(rank, raw);
}

Word concat(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    throw MalformedInput("alphabet mismatch: rank " + std::to_string(u.rank()) +
                         " vs " + std::to_string(v.rank()));
  }
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u[u.size() - 1 - cancel] == v[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> out(u.begin(), u.end() - static_cast<long>(cancel));
  out.insert(out.end(), v.begin() + static_cast<long>(cancel), v.end());
  return Word(u.rank(), out);
}

Word invert(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (std::size_t i = u.size(); i-- > 0;) {
    out.push_back(u[i].inverse());
  }
  return Word(u.rank(), out);
}

Word power(const Word& u, long k) {
  Word base = k < 0 ? invert(u) : u;
  Word out(u.rank());
  for (long i = 0; i < std::abs(k); ++i) {
    out = out * base;
  }
  return out;
}

Word conjugate_by(const Word& u, const Word& g) { return g * u * invert(g); }

bool is_cyclically_reduced(const Word& u) {
  return u.size() <= 1 || u.front() != u.back().inverse();
}

CyclicDecomposition cyclic_reduce(const Word& u) {
  std::size_t strip = 0;
  while (2 * strip + 1 < u.size() &&
         u[strip] == u[u.size() - 1 - strip].inverse()) {
    ++strip;
  }
  return {u.subword(strip, u.size() - 2 * strip), u.subword(0, strip)};
}

RootDecomposition root(const Word& u) {
  if (u.empty()) {
    throw PreconditionError("root of the empty word");
  }
  auto [core, conj] = cyclic_reduce(u);
  const std::size_t n = core.size();
  // Smallest period dividing n gives the primitive root.
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) {
      continue;
    }
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) {
      periodic = core[i] == core[i - p];
    }
    if (periodic) {
      return {conjugate_by(core.subword(0, p), conj),
              static_cast<long>(n / p)};
    }
  }
  return {u, 1};  // unreachable: p = n is always a period
}

Word substitute(const Word& w, const std::vector<Word>& images, int target_rank) {
  Word out(target_rank);
  for (auto x : w) {
    const Word& img = images.at(static_cast<std::size_t>(x.generator()));
    out = out * (x.is_inverse() ? invert(img) : img);
  }
  return out;
}

long exponent_sum(const Word& u, int generator) {
  long s = 0;
  for (auto x : u) {
    if (x.generator() == generator) {
      s += x.is_inverse() ? -1 : 1;
    }
  }
  return s;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty() || names_.size() > 26) {
    throw MalformedInput("alphabet must have 1..26 generators");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || !seen.insert(n).second) {
      throw MalformedInput("generator names must be distinct and nonempty");
    }
  }
}

Alphabet Alphabet::standard(int rank) {
  if (rank < 1 || rank > 26) {
    throw MalformedInput("alphabet must have 1..26 generators");
  }
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    names.emplace_back(1, static_cast<char>('a' + i));
  }
  return Alphabet(std::move(names));
}

Alphabet Alphabet::from_string(std::string_view letters) {
  std::vector<std::string> names;
  for (char c : letters) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      continue;
    }
    if (!std::islower(static_cast<unsigned char>(c))) {
      throw MalformedInput(std::string("alphabet letter must be lowercase: ") + c);
    }
    names.emplace_back(1, c);
  }
  return Alphabet(std::move(names));
}

Word Alphabet::parse(std::string_view text) const {
  std::vector<Letter> raw;
  if (text == "1") {
    return Word(size());
  }
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      continue;
    }
    const bool inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
    const std::string name(1, static_cast<char>(std::tolower(c)));
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      throw MalformedInput(std::string("unknown generator '") + c + "'");
    }
    raw.push_back(Letter::of(static_cast<int>(it - names_.begin()), inverse));
  }
  return Word(size(), raw);
}

std::vector<Word> Alphabet::parse_list(std::string_view text) const {
  std::vector<Word> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
      item.remove_prefix(1);
    }
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
      item.remove_suffix(1);
    }
    if (!item.empty()) {
      out.push_back(parse(item));
    }
    start = end + 1;
  }
  return out;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (auto x : w) {
    const std::string& n = names_.at(x.generator());
    for (char c : n) {
      out.push_back(x.is_inverse() ? static_cast<char>(std::toupper(c)) : c);
    }
  }
  return out;
}

std::string Alphabet::to_string() const {
  std::string out;
  for (const auto& n : names_) {
    out += n;
  }
  return out;
}

std::string to_string(const Word& w) {
  if (w.empty()) {
    return "1";
  }
  if (w.rank() > 26) {
    throw MalformedInput("cannot render words of rank > 26 in ASCII");
  }
  return Alphabet::standard(std::max(1, w.rank())).format(w);
}

Word parse_word(int rank, std::string_view text) {
  return Alphabet::standard(rank).parse(text);
}

void for_each_reduced_word(int rank, std::size_t max_length,
                           const std::function<bool(const Word&)>& fn) {
  // Breadth-first by length; within a length, extending words in ShortLex
  // order by letters in code order keeps the output ShortLex ordered.
  std::vector<Word> layer{Word(rank)};
  if (!fn(layer.front())) {
    return;
  }
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int c = 0; c < 2 * rank; ++c) {
        Letter x{static_cast<std::uint16_t>(c)};
        if (!w.empty() && w.back() == x.inverse()) {
          continue;
        }
        next.push_back(w * Word::letter(rank, x));
        if (!fn(next.back())) {
          return;
        }
      }
    }
    layer = std::move(next);
  }
}

std::vector<Word> word_ball(int rank, std::size_t radius) {
  std::vector<Word> out;
  for_each_reduced_word(rank, radius, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace cuspfill
