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

#include <cmath>
#include <map>
#include <utility>

#include "fock/common.hpp"
#include "fock/word.hpp"

namespace fock {

/// A free (noncommutative) polynomial: a finitely supported map from words
/// over {1, ..., n} to complex coefficients, i.e. an element of the dense
/// polynomial subspace of the full Fock space F^2(H_n).
///
/// Terms are kept in graded-lexicographic order so degree-by-degree iteration
/// is a plain in-order walk. Exact zeros are never stored, and every
/// arithmetic result drops coefficients with modulus below kCoeffPrune.
/// Mixing polynomials over different alphabet sizes is an error: an alphabet
/// is part of the value, not a property of the expression.
class FreePoly {
 public:
  using TermMap = std::map<Word, Complex, GradedLess>;

  explicit FreePoly(int alphabet) : n_(alphabet) {
    if (alphabet < 1 || alphabet > 255)
      throw std::invalid_argument("alphabet size must be in 1..255");
  }

  /// The basis vector e_w as a polynomial.
  static FreePoly basis(int alphabet, const Word& w, Complex c = Complex(1.0, 0.0)) {
    FreePoly p(alphabet);
    p.set_coeff(w, c);
    return p;
  }

  /// The vacuum e_0 (multiplicative identity).
  static FreePoly one(int alphabet) { return basis(alphabet, Word{}); }

  int alphabet() const { return n_; }

  /// Largest word length in the support; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.size());
  }

  /// Smallest word length in the support; 0 for the zero polynomial.
  int min_degree() const {
    if (terms_.empty()) return 0;
    return static_cast<int>(terms_.begin()->first.size());
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Complex coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// Sets (or erases) one coefficient. Letters are validated against the
  /// alphabet; values below the pruning threshold are treated as zero so the
  /// no-tiny-coefficients invariant holds at construction time too.
  FreePoly& set_coeff(const Word& w, Complex c) {
    if (w.max_letter() > n_)
      throw std::invalid_argument("word uses letters beyond alphabet " + std::to_string(n_));
    if (std::abs(c) < kCoeffPrune)
      terms_.erase(w);
    else
      terms_[w] = c;
    return *this;
  }

  FreePoly& add_to_coeff(const Word& w, Complex c) { return set_coeff(w, coeff(w) + c); }

  friend FreePoly operator+(const FreePoly& a, const FreePoly& b) {
    require_same_alphabet(a, b);
    FreePoly r = a;
    for (const auto& [w, c] : b.terms_) r.add_to_coeff(w, c);
    return r;
  }

  friend FreePoly operator-(const FreePoly& a, const FreePoly& b) {
    require_same_alphabet(a, b);
    FreePoly r = a;
    for (const auto& [w, c] : b.terms_) r.add_to_coeff(w, -c);
    return r;
  }

  friend FreePoly operator-(const FreePoly& a) { return a * Complex(-1.0, 0.0); }

  friend FreePoly operator*(const FreePoly& a, Complex s) {
    FreePoly r(a.n_);
    if (std::abs(s) == 0.0) return r;
    for (const auto& [w, c] : a.terms_) r.set_coeff(w, c * s);
    return r;
  }

  friend FreePoly operator*(Complex s, const FreePoly& a) { return a * s; }
  friend FreePoly operator*(const FreePoly& a, double s) { return a * Complex(s, 0.0); }
  friend FreePoly operator*(double s, const FreePoly& a) { return a * Complex(s, 0.0); }

  friend bool operator==(const FreePoly& a, const FreePoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  static void require_same_alphabet(const FreePoly& a, const FreePoly& b) {
    if (a.n_ != b.n_)
      throw std::invalid_argument("alphabet sizes differ: " + std::to_string(a.n_) +
                                  " vs " + std::to_string(b.n_));
  }

 private:
  int n_;
  TermMap terms_;
};

/// Tensor (concatenation) product: (a (x) b)(w) = sum over splittings w = f.g
/// of a(f) b(g). Computed term-by-term, so cost is |supp a| * |supp b|.
inline FreePoly tensor(const FreePoly& a, const FreePoly& b) {
  FreePoly::require_same_alphabet(a, b);
  FreePoly r(a.alphabet());
  for (const auto& [f, ca] : a.terms())
    for (const auto& [g, cb] : b.terms()) r.add_to_coeff(concat(f, g), ca * cb);
  return r;
}

/// The flip unitary: e_f -> e_{reverse(f)} extended linearly. An isometric
/// involution and an anti-homomorphism of the tensor product; it exchanges
/// left and right multiplication operators.
inline FreePoly flip(const FreePoly& a) {
  FreePoly r(a.alphabet());
  for (const auto& [w, c] : a.terms()) r.set_coeff(w.reversed(), c);
  return r;
}

/// Fock-space inner product, conjugate-linear in the second argument:
/// <a, b> = sum_f a(f) * conj(b(f)).
inline Complex inner_product(const FreePoly& a, const FreePoly& b) {
  FreePoly::require_same_alphabet(a, b);
  Complex s(0.0, 0.0);
  const bool a_smaller = a.support_size() <= b.support_size();
  const FreePoly& small = a_smaller ? a : b;
  const FreePoly& large = a_smaller ? b : a;
  for (const auto& [w, c] : small.terms()) {
    Complex other = large.coeff(w);
    s += a_smaller ? c * std::conj(other) : other * std::conj(c);
  }
  return s;
}

/// The l^2 (Fock space) norm of the coefficient sequence.
inline double norm2(const FreePoly& a) {
  double s = 0.0;
  for (const auto& [w, c] : a.terms()) s += std::norm(c);
  return std::sqrt(s);
}

/// Sum of coefficient moduli; an upper bound for the multiplier norm since
/// every word acts as an isometry on the left.
inline double l1_upper_bound(const FreePoly& a) {
  double s = 0.0;
  for (const auto& [w, c] : a.terms()) s += std::abs(c);
  return s;
}

/// a / ||a||_2; the zero polynomial has no direction to normalize.
inline FreePoly normalized(const FreePoly& a) {
  double n = norm2(a);
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero polynomial");
  return a * Complex(1.0 / n, 0.0);
}

/// Drops every term of degree > d (the tail of a series truncation).
inline FreePoly truncated(const FreePoly& a, int d) {
  FreePoly r(a.alphabet());
  for (const auto& [w, c] : a.terms()) {
    if (static_cast<int>(w.size()) > d) break;  // graded order: done
    r.set_coeff(w, c);
  }
  return r;
}

/// The degree-k homogeneous component.
inline FreePoly homogeneous_part(const FreePoly& a, int k) {
  FreePoly r(a.alphabet());
  for (const auto& [w, c] : a.terms())
    if (static_cast<int>(w.size()) == k) r.set_coeff(w, c);
  return r;
}

/// Multiplies by the unit scalar that makes the first (graded-lex) nonzero
/// coefficient positive real — the canonical representative of {z a : |z|=1}.
inline FreePoly canonical_phase(const FreePoly& a) {
  if (a.is_zero()) return a;
  Complex lead = a.terms().begin()->second;
  return a * (std::conj(lead) / std::abs(lead));
}

/// A polynomial together with the degree at which an (implicit) series was
/// cut and an upper bound on the l^2 norm of what was discarded. Constructors
/// that know their series exactly store the exact tail norm.
struct TruncatedSeries {
  FreePoly poly;
  int trunc_degree = 0;
  double tail_bound = 0.0;

  TruncatedSeries(FreePoly p, int degree, double tail)
      : poly(std::move(p)), trunc_degree(degree), tail_bound(tail) {
    if (trunc_degree < 0) throw std::invalid_argument("truncation degree must be >= 0");
    if (poly.degree() > trunc_degree)
      throw std::invalid_argument("polynomial degree exceeds truncation degree");
    if (!(tail_bound >= 0.0) || !std::isfinite(tail_bound))
      throw std::invalid_argument("tail bound must be finite and nonnegative");
  }

  /// A polynomial viewed as an exactly known series.
  static TruncatedSeries exact(FreePoly p) {
    int d = std::max(p.degree(), 0);
    return TruncatedSeries(std::move(p), d, 0.0);
  }
};

}  // namespace fock
