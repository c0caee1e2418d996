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

#include <map>
#include <vector>

#include "fock/poly.hpp"

namespace fock {

/// A point of the open unit ball of C^n, indexing the codimension-one
/// invariant subspace M_lambda = [z_lambda]^perp and the character
/// psi -> abelian_eval(psi, lambda) of the multiplier algebra.
struct Lambda {
  std::vector<Complex> entries;

  explicit Lambda(std::vector<Complex> e) : entries(std::move(e)) {
    if (entries.empty()) throw std::invalid_argument("lambda needs at least one entry");
    if (!(norm_sq() < 1.0))
      throw std::invalid_argument("lambda must lie in the open unit ball");
  }

  int n() const { return static_cast<int>(entries.size()); }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : entries) s += std::norm(c);
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }

  Complex weight(const Word& w) const {
    Complex p(1.0, 0.0);
    for (auto l : w.letters()) p *= entries[static_cast<std::size_t>(l - 1)];
    return p;
  }
};

/// The character: sum over support of a_f * lambda_f where lambda_f is the
/// letterwise product. This is the abelianization of psi evaluated at lambda
/// (exact arithmetic on the coefficients, no conjugations).
inline Complex abelian_eval(const FreePoly& psi, const Lambda& lambda) {
  if (psi.alphabet() != lambda.n())
    throw std::invalid_argument("alphabet size does not match lambda dimension");
  Complex s(0.0, 0.0);
  for (const auto& [w, c] : psi.terms()) s += c * lambda.weight(w);
  return s;
}

/// l^2 norm of the degree > N tail of the defining vector: the uncertainty
/// weight for pairings against truncated series.
inline double z_lambda_tail(const Lambda& lambda, int N) {
  const double r2 = lambda.norm_sq();
  return std::pow(lambda.norm(), N + 1) / std::sqrt(1.0 - r2);
}

/// The defining vector of M_lambda truncated at degree N. The coefficient at
/// word f is conj(lambda_f), which makes <psi, z_lambda> equal the bilinear
/// character abelian_eval(psi, lambda) exactly — the convention under which
/// every projection and membership identity below holds verbatim for complex
/// lambda (for real lambda it is the letterwise-product vector itself).
/// ||z_lambda||^2 = 1/(1 - ||lambda||^2) exactly; the truncation stores the
/// exact discarded mass as its tail bound. Words through letters with
/// lambda_i = 0 carry zero weight and are never materialized.
inline TruncatedSeries z_lambda(const Lambda& lambda, int N,
                                std::size_t max_terms = kDefaultColumnCap) {
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  FreePoly z(lambda.n());
  std::size_t count = 0;
  std::vector<std::pair<Word, Complex>> level{{Word{}, Complex(1.0, 0.0)}};
  for (int d = 0; d <= N && !level.empty(); ++d) {
    std::vector<std::pair<Word, Complex>> next;
    for (auto& [w, c] : level) {
      z.set_coeff(w, c);
      if (++count > max_terms)
        throw ResourceLimitError("z_lambda support exceeds " + std::to_string(max_terms) +
                                 " terms");
      if (d == N) continue;
      for (int i = 1; i <= lambda.n(); ++i) {
        const Complex ci = std::conj(lambda.entries[static_cast<std::size_t>(i - 1)]);
        const Complex cw = c * ci;
        if (std::abs(cw) < kCoeffPrune) continue;
        next.emplace_back(concat(w, Word{i}), cw);
      }
    }
    level = std::move(next);
  }
  return TruncatedSeries(std::move(z), N, z_lambda_tail(lambda, N));
}

/// Left-letter deletion (the adjoint shift): e_{i.g} -> e_g, everything else
/// to zero.
inline FreePoly delete_front(const FreePoly& psi, int letter) {
  FreePoly r(psi.alphabet());
  for (const auto& [w, c] : psi.terms())
    if (!w.empty() && w.letter(0) == letter) r.set_coeff(w.drop_front(1), c);
  return r;
}

/// Orthogonal projection onto M_lambda = [z_lambda]^perp, truncated at N:
/// psi - (<psi, z_lambda> / ||z_lambda||^2) z_lambda with the pairing taken
/// exactly (abelian_eval) and the norm exactly (1/(1-||lambda||^2)). The tail
/// bound is the coefficient's modulus times the z tail.
inline TruncatedSeries q_lambda(const FreePoly& psi, const Lambda& lambda, int N,
                                std::size_t max_terms = kDefaultColumnCap) {
  if (psi.degree() > N)
    throw std::invalid_argument("polynomial degree exceeds truncation degree");
  const Complex coef = abelian_eval(psi, lambda) * (1.0 - lambda.norm_sq());
  TruncatedSeries z = z_lambda(lambda, N, max_terms);
  FreePoly p = psi - coef * z.poly;
  return TruncatedSeries(std::move(p), N, std::abs(coef) * z.tail_bound);
}

/// Orthogonal projection onto the wandering subspace L_lambda of M_lambda:
/// P = Q - sum_i S_i Q S_i^*, truncated at N (the shifted terms use the
/// degree N-1 truncation of z so nothing spills past N).
inline TruncatedSeries p_lambda(const FreePoly& psi, const Lambda& lambda, int N,
                                std::size_t max_terms = kDefaultColumnCap) {
  if (psi.degree() > N)
    throw std::invalid_argument("polynomial degree exceeds truncation degree");
  TruncatedSeries q = q_lambda(psi, lambda, N, max_terms);
  FreePoly acc = q.poly;
  double tail = q.tail_bound;
  if (N >= 1) {
    for (int i = 1; i <= lambda.n(); ++i) {
      FreePoly di = delete_front(psi, i);
      if (di.is_zero()) continue;
      TruncatedSeries qi = q_lambda(di, lambda, N - 1, max_terms);
      acc = acc - tensor(FreePoly::basis(psi.alphabet(), Word{i}), qi.poly);
      tail += qi.tail_bound;
    }
  }
  return TruncatedSeries(std::move(acc), N, tail);
}

/// The spanning wandering family of M_lambda, truncated at N, normalized on
/// the truncation, and phase-fixed so the first graded-lex coefficient is
/// positive real:
///
///   phi_0 = a_0 [e_0 - z_lambda / ||z_lambda||^2]   (omitted when lambda=0,
///           where e_0 - z degenerates to the zero vector),
///   phi_i = a_i [z_lambda (x) (e_i - lambda_i e_0)], i = 1..n.
///
/// Flipped, each lies in M_lambda (the phi_i pairings vanish identically,
/// phi_0's within the tail); each is inner within the tail allowance. The
/// family spans L_lambda but is not orthogonal, and its dimension is decided
/// numerically, not assumed.
inline std::vector<TruncatedSeries> wandering_lambda(const Lambda& lambda, int N,
                                                     std::size_t max_terms = kDefaultColumnCap) {
  std::vector<TruncatedSeries> out;
  const double r2 = lambda.norm_sq();
  TruncatedSeries z = z_lambda(lambda, N, max_terms);
  if (r2 > 0.0) {
    FreePoly v = FreePoly::one(lambda.n()) - (1.0 - r2) * z.poly;
    const double nv = norm2(v);
    out.emplace_back(canonical_phase(normalized(v)), N, (1.0 - r2) * z.tail_bound / nv);
  }
  TruncatedSeries zshort = z_lambda(lambda, std::max(N - 1, 0), max_terms);
  for (int i = 1; i <= lambda.n(); ++i) {
    FreePoly step = FreePoly::basis(lambda.n(), Word{i});
    step.add_to_coeff(Word{}, -lambda.entries[static_cast<std::size_t>(i - 1)]);
    FreePoly v = tensor(zshort.poly, step);
    const double nv = norm2(v);
    const double step_l1 = l1_upper_bound(step);
    out.emplace_back(canonical_phase(normalized(v)), N, step_l1 * zshort.tail_bound / nv);
  }
  return out;
}

struct MembershipResult {
  Complex pairing;          ///< <psi, z_lambda>, exact for polynomials
  double uncertainty = 0.0; ///< Cauchy-Schwarz slack from the series tail
  bool contained = false;
};

/// Membership psi in M_lambda: the pairing must vanish. For a truncated
/// series the discarded tail only meets the degree > N part of z_lambda, so
/// the uncertainty is tail_bound * ||z tail beyond N||.
inline MembershipResult m_lambda_contains(const TruncatedSeries& psi, const Lambda& lambda,
                                          double tol = kDefaultTol) {
  MembershipResult r;
  r.pairing = abelian_eval(psi.poly, lambda);
  r.uncertainty = psi.tail_bound * z_lambda_tail(lambda, psi.trunc_degree);
  r.contained = std::abs(r.pairing) <= tol + r.uncertainty;
  return r;
}

inline MembershipResult m_lambda_contains(const FreePoly& psi, const Lambda& lambda,
                                          double tol = kDefaultTol) {
  return m_lambda_contains(TruncatedSeries::exact(psi), lambda, tol);
}

struct IdealCheckResult {
  bool in_ideal = false;
  double max_collapse = 0.0;  ///< largest multidegree coefficient sum
};

/// Membership in the closed commutator ideal: psi lies in it iff its
/// abelianization vanishes, i.e. the coefficient sum over each multidegree
/// (letter-count vector) is zero. Pure coefficient arithmetic.
inline IdealCheckResult in_commutator_ideal(const FreePoly& psi, double tol = 1e-12) {
  std::map<std::vector<int>, Complex> sums;
  for (const auto& [w, c] : psi.terms()) {
    std::vector<int> multi(static_cast<std::size_t>(psi.alphabet()), 0);
    for (auto l : w.letters()) ++multi[static_cast<std::size_t>(l - 1)];
    sums[multi] += c;
  }
  IdealCheckResult r;
  for (const auto& [m, s] : sums) r.max_collapse = std::max(r.max_collapse, std::abs(s));
  r.in_ideal = r.max_collapse <= tol;
  return r;
}

}  // namespace fock
