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

#include <set>
#include <vector>

#include "fock/inverse.hpp"
#include "fock/poly.hpp"

namespace fock {

/// Coefficient list (c_0, c_1, ...) of a single-variable power series /
/// polynomial; the classical (one-letter) side of the inherited-function
/// construction.
using ClassicalCoeffs = std::vector<Complex>;

// ---------------------------------------------------------------------------
// Inner functions: constructions whose left multiplication is an isometry.
// ---------------------------------------------------------------------------

/// e_f itself: words act isometrically, so every monomial with unit
/// coefficient is inner.
inline FreePoly monomial(int alphabet, const Word& f) {
  return FreePoly::basis(alphabet, f);
}

/// A unit vector supported in a single degree is inner: translates of its
/// support words cannot overlap, so the isometry Gram conditions are vacuous.
/// Input must be nonzero and homogeneous; output is normalized.
inline FreePoly homogeneous_inner(const FreePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("homogeneous input must be nonzero");
  if (p.min_degree() != p.degree())
    throw std::invalid_argument("support mixes degrees " + std::to_string(p.min_degree()) +
                                " and " + std::to_string(p.degree()));
  return normalized(p);
}

/// A combination sum c_j e_{f_j} whose (nonempty) support words start with
/// pairwise distinct letters is inner after normalization: distinct first
/// letters prevent any word from being a right translate of another.
inline FreePoly distinct_first_letter(const FreePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("combination must be nonzero");
  std::set<int> first_letters;
  for (const auto& [w, c] : p.terms()) {
    if (w.empty())
      throw std::invalid_argument("support words must be nonempty");
    if (!first_letters.insert(w.letter(0)).second)
      throw std::invalid_argument("first letter " + std::to_string(w.letter(0)) +
                                  " repeats in support");
  }
  return normalized(p);
}

/// psi (x) e_k for a unit psi whose support avoids the letter k is inner:
/// appending a letter foreign to psi separates all right translates.
inline FreePoly right_letter_inner(const FreePoly& psi, int letter) {
  if (psi.is_zero()) throw std::invalid_argument("psi must be nonzero");
  if (letter < 1 || letter > psi.alphabet())
    throw std::invalid_argument("letter outside alphabet");
  for (const auto& [w, c] : psi.terms())
    if (w.contains_letter(letter))
      throw std::invalid_argument("support word " + w.str() + " already uses letter " +
                                  std::to_string(letter));
  return tensor(normalized(psi), FreePoly::basis(psi.alphabet(), Word{std::vector<int>{letter}}));
}

// ---------------------------------------------------------------------------
// Inherited functions: substituting a word e_f for the classical variable z
// gives an isometry of H^2 into the Fock space that preserves multiplier
// norms, inner-ness, and outer-ness.
// ---------------------------------------------------------------------------

/// sum_k c_k e_f^k truncated at total degree N, with the exactly known
/// discarded l^2 mass as the tail bound. Requires f nonempty.
inline TruncatedSeries inherited(int alphabet, const Word& f, const ClassicalCoeffs& coeffs,
                                 int N) {
  if (f.empty()) throw std::invalid_argument("substituted word must be nonempty");
  if (f.max_letter() > alphabet) throw std::invalid_argument("word letters exceed alphabet");
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  FreePoly p(alphabet);
  double tail2 = 0.0;
  Word fk;  // f^k, grown incrementally
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (static_cast<int>(fk.size()) <= N)
      p.add_to_coeff(fk, coeffs[k]);
    else
      tail2 += std::norm(coeffs[k]);
    fk = concat(fk, f);
  }
  return TruncatedSeries(std::move(p), N, std::sqrt(tail2));
}

/// The substituted Moebius transform (e_f - mu)(1 - conj(mu) e_f)^{-1},
/// truncated at degree N: constant term -mu and coefficient
/// (1-|mu|^2) conj(mu)^{k-1} on e_f^k for k = 1..floor(N/|f|). Inner as a
/// series for every |mu| < 1; the tail bound is the exact l^2 norm of the
/// discarded part, |mu|^K sqrt(1-|mu|^2).
inline TruncatedSeries mobius(int alphabet, const Word& f, Complex mu, int N) {
  if (f.empty()) throw std::invalid_argument("substituted word must be nonempty");
  if (f.max_letter() > alphabet) throw std::invalid_argument("word letters exceed alphabet");
  if (!(std::abs(mu) < 1.0)) throw std::invalid_argument("|mu| must be < 1");
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  const int K = N / static_cast<int>(f.size());
  const double m = std::abs(mu);
  FreePoly p(alphabet);
  p.set_coeff(Word{}, -mu);
  Word fk;
  Complex geom(1.0, 0.0);  // conj(mu)^{k-1}
  const Complex scale(1.0 - m * m, 0.0);
  for (int k = 1; k <= K; ++k) {
    fk = concat(fk, f);
    p.add_to_coeff(fk, scale * geom);
    geom *= std::conj(mu);
  }
  const double tail = std::pow(m, K) * std::sqrt(1.0 - m * m);
  return TruncatedSeries(std::move(p), N, tail);
}

/// The inherited Szego-type kernel sum_k mu^k e_f^k truncated at degree N;
/// tail is the exact discarded norm |mu|^{K+1} / sqrt(1-|mu|^2).
inline TruncatedSeries h_series(int alphabet, const Word& f, Complex mu, int N) {
  if (f.empty()) throw std::invalid_argument("substituted word must be nonempty");
  if (f.max_letter() > alphabet) throw std::invalid_argument("word letters exceed alphabet");
  if (!(std::abs(mu) < 1.0)) throw std::invalid_argument("|mu| must be < 1");
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  const int K = N / static_cast<int>(f.size());
  const double m = std::abs(mu);
  FreePoly p(alphabet);
  Word fk;
  Complex c(1.0, 0.0);
  for (int k = 0; k <= K; ++k) {
    p.add_to_coeff(fk, c);
    fk = concat(fk, f);
    c *= mu;
  }
  const double tail = std::pow(m, K + 1) / std::sqrt(1.0 - m * m);
  return TruncatedSeries(std::move(p), N, tail);
}

// ---------------------------------------------------------------------------
// Outer functions: entire and geometric series with controllable tails.
// ---------------------------------------------------------------------------

/// Partial sums of sum_k phi^k / k!, stopping once the next term's l^1 bound
/// drops below tol. The tail bound is the l^1 remainder of exp at
/// L = l1_upper_bound(phi), which dominates the discarded l^2 mass.
inline TruncatedSeries exp_series(const FreePoly& phi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  FreePoly sum = FreePoly::one(phi.alphabet());
  FreePoly term = FreePoly::one(phi.alphabet());
  int k = 0;
  while (true) {
    ++k;
    term = tensor(term, phi) * Complex(1.0 / static_cast<double>(k), 0.0);
    if (l1_upper_bound(term) < tol) break;
    sum = sum + term;
    if (k > 10'000) throw ResourceLimitError("exp series did not reach tolerance");
  }
  // l^1 remainder of exp(L) from index k on (the first excluded power).
  const double L = l1_upper_bound(phi);
  double rem = 0.0, t = 1.0;
  for (int j = 1; j <= k; ++j) t *= L / j;
  for (int j = k; j < k + 1000; ++j) {
    rem += t;
    t *= L / (j + 1);
    if (t < rem * 1e-18 + 1e-300) break;
  }
  return TruncatedSeries(sum, std::max(sum.degree(), 0), rem);
}

/// (e_0 - phi)^{-1} = sum_k phi^k truncated at degree N, for l1(phi) < 1
/// (the gate that makes the Neumann series converge in multiplier norm).
/// The tail bound also dominates || (e_0-phi) (x) result - e_0 ||_2.
inline TruncatedSeries geometric_inverse(const FreePoly& phi, int N,
                                         std::size_t max_terms = kDefaultColumnCap) {
  const double L = l1_upper_bound(phi);
  if (!(L < 1.0))
    throw std::invalid_argument("geometric inverse needs l1(phi) < 1, got " +
                                std::to_string(L));
  FreePoly base = FreePoly::one(phi.alphabet()) - phi;
  FreePoly inv = detail::graded_inverse(base, N, max_terms);

  const Complex c = phi.coeff(Word{});
  FreePoly plus = phi;
  plus.set_coeff(Word{}, Complex(0.0, 0.0));
  const double lplus = l1_upper_bound(plus);
  const double denom = std::abs(Complex(1.0, 0.0) - c);
  double tail = 0.0;
  if (lplus > 0.0) {
    const double r = lplus / denom;
    const int dmax = std::max(plus.degree(), 1);
    const int J = (N + dmax) / dmax;  // ceil((N+1)/dmax)
    tail = (1.0 + L) * std::pow(r, J) / (denom * (1.0 - r));
  }
  return TruncatedSeries(std::move(inv), N, tail);
}

}  // namespace fock
