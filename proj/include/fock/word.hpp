/*
   Copyright 2026 The fock authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "fock/common.hpp"

namespace fock {

/// A word over the alphabet {1, ..., n}: the index of one tensor-monomial
/// basis vector e_f of the full Fock space. The empty word is the vacuum e_0.
///
/// Words are immutable value types; the alphabet size is not stored here (it
/// belongs to the polynomial), only the letters themselves.
class Word {
 public:
  Word() = default;

  Word(std::initializer_list<int> letters) { assign(letters.begin(), letters.end()); }

  explicit Word(const std::vector<int>& letters) { assign(letters.begin(), letters.end()); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Letter at position i, 1-based values in {1, ..., 255}.
  int letter(std::size_t i) const { return letters_[i]; }

  const std::vector<std::uint8_t>& letters() const { return letters_; }

  std::vector<int> letters_int() const {
    return std::vector<int>(letters_.begin(), letters_.end());
  }

  /// Largest letter appearing; 0 for the empty word.
  int max_letter() const {
    int m = 0;
    for (auto l : letters_) m = std::max(m, static_cast<int>(l));
    return m;
  }

  bool contains_letter(int l) const {
    return std::find(letters_.begin(), letters_.end(), l) != letters_.end();
  }

  /// Concatenation f.g — the tensor product of basis vectors.
  friend Word concat(const Word& f, const Word& g) {
    Word r;
    r.letters_.reserve(f.letters_.size() + g.letters_.size());
    r.letters_.insert(r.letters_.end(), f.letters_.begin(), f.letters_.end());
    r.letters_.insert(r.letters_.end(), g.letters_.begin(), g.letters_.end());
    return r;
  }

  /// Letter-reversal; realizes the flip unitary on basis vectors.
  Word reversed() const {
    Word r = *this;
    std::reverse(r.letters_.begin(), r.letters_.end());
    return r;
  }

  bool starts_with(const Word& p) const {
    return p.size() <= size() &&
           std::equal(p.letters_.begin(), p.letters_.end(), letters_.begin());
  }

  bool ends_with(const Word& s) const {
    return s.size() <= size() &&
           std::equal(s.letters_.rbegin(), s.letters_.rend(), letters_.rbegin());
  }

  /// The word with its first k letters removed; requires k <= size().
  Word drop_front(std::size_t k) const {
    Word r;
    r.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(k), letters_.end());
    return r;
  }

  /// The word with its last k letters removed; requires k <= size().
  Word drop_back(std::size_t k) const {
    Word r;
    r.letters_.assign(letters_.begin(), letters_.end() - static_cast<std::ptrdiff_t>(k));
    return r;
  }

  Word prefix(std::size_t k) const {
    Word r;
    r.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

  /// Graded lexicographic order: by length first, then left-to-right.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

  std::string str() const {
    if (letters_.empty()) return "e0";
    std::string s = "e[";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(static_cast<int>(letters_[i]));
    }
    s += ']';
    return s;
  }

 private:
  template <typename It>
  void assign(It first, It last) {
    letters_.reserve(static_cast<std::size_t>(std::distance(first, last)));
    for (It it = first; it != last; ++it) {
      int l = static_cast<int>(*it);
      if (l < 1 || l > 255)
        throw std::invalid_argument("word letter out of range: " + std::to_string(l));
      letters_.push_back(static_cast<std::uint8_t>(l));
    }
  }

  std::vector<std::uint8_t> letters_;
};

/// Strict weak order functor for containers keyed by words.
struct GradedLess {
  bool operator()(const Word& a, const Word& b) const { return (a <=> b) < 0; }
};

/// Number of words of length exactly k over an n-letter alphabet, saturating
/// at max() instead of overflowing.
inline std::uint64_t words_of_length(int n, int k) {
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) {
    if (c > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
      return std::numeric_limits<std::uint64_t>::max();
    c *= static_cast<std::uint64_t>(n);
  }
  return c;
}

/// Number of words of length <= d (the dimension of the degree-d truncation),
/// saturating at max().
inline std::uint64_t words_up_to(int n, int d) {
  std::uint64_t total = 0;
  for (int k = 0; k <= d; ++k) {
    std::uint64_t c = words_of_length(n, k);
    if (total > std::numeric_limits<std::uint64_t>::max() - c)
      return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

/// Graded-lexicographic enumeration of all words of length <= degree over a
/// fixed alphabet. Index 0 is the empty word; indices are contiguous and the
/// mapping is arithmetic in both directions (no tables of words are stored).
class WordIndexer {
 public:
  WordIndexer(int alphabet, int degree) : n_(alphabet), degree_(degree) {
    if (alphabet < 1) throw std::invalid_argument("alphabet size must be >= 1");
    if (degree < 0) throw std::invalid_argument("indexer degree must be >= 0");
    offsets_.resize(static_cast<std::size_t>(degree) + 2);
    offsets_[0] = 0;
    for (int k = 0; k <= degree; ++k) {
      std::uint64_t c = words_of_length(n_, k);
      if (offsets_[static_cast<std::size_t>(k)] >
          std::numeric_limits<std::uint64_t>::max() - c)
        throw ResourceLimitError("word index space overflows 64 bits");
      offsets_[static_cast<std::size_t>(k) + 1] =
          offsets_[static_cast<std::size_t>(k)] + c;
    }
  }

  int alphabet() const { return n_; }
  int degree() const { return degree_; }

  std::uint64_t count() const { return offsets_.back(); }

  std::uint64_t index_of(const Word& w) const {
    const int len = static_cast<int>(w.size());
    if (len > degree_) throw std::invalid_argument("word too long for indexer");
    std::uint64_t idx = offsets_[static_cast<std::size_t>(len)];
    std::uint64_t digits = 0;
    for (int i = 0; i < len; ++i)
      digits = digits * static_cast<std::uint64_t>(n_) +
               static_cast<std::uint64_t>(w.letter(static_cast<std::size_t>(i)) - 1);
    return idx + digits;
  }

  Word word_at(std::uint64_t index) const {
    if (index >= count()) throw std::invalid_argument("word index out of range");
    int len = 0;
    while (offsets_[static_cast<std::size_t>(len) + 1] <= index) ++len;
    std::uint64_t digits = index - offsets_[static_cast<std::size_t>(len)];
    std::vector<int> letters(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
      letters[static_cast<std::size_t>(i)] =
          static_cast<int>(digits % static_cast<std::uint64_t>(n_)) + 1;
      digits /= static_cast<std::uint64_t>(n_);
    }
    return Word(letters);
  }

 private:
  int n_;
  int degree_;
  std::vector<std::uint64_t> offsets_;
};

}  // namespace fock
