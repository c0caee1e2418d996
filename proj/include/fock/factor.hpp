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

#include <string>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "fock/inverse.hpp"
#include "fock/opnorm.hpp"
#include "fock/section.hpp"

namespace fock {

// ---------------------------------------------------------------------------
// Inner test
// ---------------------------------------------------------------------------

struct InnerCheckResult {
  bool inner = false;
  double defect = 0.0;          ///< max(norm_defect, gram_defect)
  double norm_defect = 0.0;     ///< | ||phi||_2 - 1 |
  double gram_defect = 0.0;     ///< max_s |<phi, phi (x) e_s>|, 1 <= |s| <= deg
  double tol = 0.0;
  double tail_allowance = 0.0;  ///< extra slack granted to truncated series
};

/// Finite isometry test. Left multiplication by phi is an isometry iff
/// ||phi||_2 = 1 and <phi, phi (x) e_s> = 0 for every nonempty word s — and
/// overlaps vanish automatically once |s| > deg(phi), so the check is finite.
/// The overlap for suffix s collects a_{k.s} conj(a_k) over support pairs.
inline InnerCheckResult is_inner(const FreePoly& phi, double tol = kDefaultTol) {
  InnerCheckResult r;
  r.tol = tol;
  r.norm_defect = std::abs(norm2(phi) - 1.0);
  std::map<Word, Complex, GradedLess> overlap;
  for (const auto& [w1, c1] : phi.terms())
    for (const auto& [w2, c2] : phi.terms()) {
      if (w2.size() >= w1.size()) break;  // graded order: only proper prefixes
      if (w1.starts_with(w2)) overlap[w1.drop_front(w2.size())] += c1 * std::conj(c2);
    }
  for (const auto& [s, v] : overlap) r.gram_defect = std::max(r.gram_defect, std::abs(v));
  r.defect = std::max(r.norm_defect, r.gram_defect);
  r.inner = r.defect <= tol;
  return r;
}

/// Truncated-series variant: a tail of l^2 size t can shift the norm by t and
/// each overlap by 2t + t^2, so the verdict grants that much allowance.
inline InnerCheckResult is_inner(const TruncatedSeries& s, double tol = kDefaultTol) {
  InnerCheckResult r = is_inner(s.poly, tol);
  r.tail_allowance = 2.0 * s.tail_bound + s.tail_bound * s.tail_bound;
  r.inner = r.defect <= tol + r.tail_allowance;
  return r;
}

// ---------------------------------------------------------------------------
// Least-squares plumbing shared by the outer test and the factorization.
// ---------------------------------------------------------------------------

namespace detail {

/// Residual b - A x of the least-squares problem min ||A x - b||. Dense
/// rank-revealing solve below the cutoff (exact, handles rank deficiency);
/// conjugate-gradient on the normal equations above it. Started from zero,
/// CGLS iterates stay in range(A*), so rank-deficient problems converge to
/// the minimum-norm solution.
inline DenseVector least_squares_residual(const SparseMatrix& A, const DenseVector& b,
                                          const IterationOptions& opt) {
  if (A.cols() == 0 || A.nonZeros() == 0) return b;
  DenseVector x;
  if (static_cast<std::size_t>(A.cols()) <= opt.dense_cutoff) {
    DenseMatrix dense(A);
    x = dense.completeOrthogonalDecomposition().solve(b);
  } else {
    Eigen::LeastSquaresConjugateGradient<SparseMatrix> solver;
    solver.setTolerance(1e-14);
    solver.setMaxIterations(std::max<Eigen::Index>(4 * A.cols(), 10'000));
    solver.compute(A);
    x = solver.solve(b);
  }
  return b - A * x;
}

inline DenseVector poly_to_vector(const FreePoly& p, const WordIndexer& ix) {
  DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(ix.count()));
  for (const auto& [w, c] : p.terms())
    v[static_cast<Eigen::Index>(ix.index_of(w))] = c;
  return v;
}

inline FreePoly vector_to_poly(const DenseVector& v, const WordIndexer& ix, int alphabet) {
  FreePoly p(alphabet);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) >= kCoeffPrune)
      p.set_coeff(ix.word_at(static_cast<std::uint64_t>(i)), v[i]);
  return p;
}

/// Coefficients <psi, phi (x) e_h> for all h: the adjoint-transport of psi
/// through phi. When phi is inner these are exactly the coefficients of the
/// right factor in psi = phi (x) g.
inline FreePoly adjoint_coefficients(const FreePoly& psi, const FreePoly& phi) {
  FreePoly g(psi.alphabet());
  for (const auto& [w, cpsi] : psi.terms())
    for (const auto& [f, cphi] : phi.terms()) {
      if (f.size() > w.size()) break;
      if (w.starts_with(f)) g.add_to_coeff(w.drop_front(f.size()), cpsi * std::conj(cphi));
    }
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Outer test
// ---------------------------------------------------------------------------

/// dist_m = min over deg(h) <= m of || psi (x) h - e_0 ||_2 for m = 0..N.
/// psi generates a dense invariant subspace (is outer) iff this profile
/// decreases to zero; the profile is nonincreasing by nesting.
inline std::vector<double> outer_profile(const FreePoly& psi, int N,
                                         const IterationOptions& opt = {}) {
  if (psi.is_zero()) throw std::invalid_argument("outer test needs a nonzero polynomial");
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(N) + 1);
  for (int m = 0; m <= N; ++m) {
    FiniteSection s = finite_section(psi, m, opt.max_columns);
    DenseVector b = DenseVector::Zero(s.matrix.rows());
    b[0] = Complex(1.0, 0.0);  // e_0 is row 0 in graded-lex order
    dist.push_back(detail::least_squares_residual(s.matrix, b, opt).norm());
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Inner-outer factorization
// ---------------------------------------------------------------------------

struct FactorizationResult {
  TruncatedSeries inner;   ///< phi: degree-N approximation of the inner part
  TruncatedSeries outer;   ///< g: adjoint-transported right factor
  double residual = 0.0;   ///< || psi - phi (x) g ||_2 at this truncation
  int degree = 0;
};

/// Truncated inner-outer factorization psi = phi (x) g.
///
/// Algorithm: flip psi, project flip(psi) off the span of its own left
/// translates {e_p (x) flip(psi) : 1 <= |p| <= N - deg psi} — the residual
/// direction is the wandering vector of the cyclic invariant subspace, i.e.
/// the flipped inner part. Normalize, flip back, fix the phase so the first
/// graded-lex coefficient of the inner part is positive real, and transport
/// psi through the inner part's adjoint to obtain the outer coefficients
/// <psi, phi (x) e_h>. Exact (residual 0) whenever psi is inner times a
/// polynomial whose translates stay inside degree N; otherwise the residual
/// decreases as N grows (no a-priori rate, so the parts carry tail bound 0
/// and the factorization error is the reported residual).
inline FactorizationResult inner_outer(const FreePoly& psi, int N,
                                       const IterationOptions& opt = {}) {
  if (psi.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  if (N < psi.degree())
    throw std::invalid_argument("truncation degree below deg(psi)");
  const int n = psi.alphabet();
  const int K = N - psi.degree();
  if (words_up_to(n, N) > opt.max_columns)
    throw ResourceLimitError("factorization truncation exceeds the column cap");

  const FreePoly psit = flip(psi);
  const WordIndexer rows(n, N);
  const WordIndexer prefixes(n, std::max(K, 0));
  const std::uint64_t ncols = prefixes.count() - 1;  // nonempty prefixes only

  SparseMatrix U(static_cast<Eigen::Index>(rows.count()), static_cast<Eigen::Index>(ncols));
  {
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<std::size_t>(ncols) * psit.support_size());
    for (std::uint64_t j = 1; j < prefixes.count(); ++j) {
      const Word p = prefixes.word_at(j);
      for (const auto& [f, c] : psit.terms())
        trip.emplace_back(static_cast<int>(rows.index_of(concat(p, f))),
                          static_cast<int>(j - 1), c);
    }
    U.setFromTriplets(trip.begin(), trip.end());
  }

  const DenseVector b = detail::poly_to_vector(psit, rows);
  DenseVector w = detail::least_squares_residual(U, b, opt);
  const double wn = w.norm();
  if (!(wn > 1e-13 * norm2(psi)))
    throw std::runtime_error("wandering direction vanished numerically");
  FreePoly phit = detail::vector_to_poly(w / wn, rows, n);
  FreePoly phi = canonical_phase(flip(phit));
  phi = normalized(phi);  // re-normalize after pruning

  FreePoly g = detail::adjoint_coefficients(psi, phi);
  const double residual = norm2(psi - tensor(phi, g));
  return FactorizationResult{TruncatedSeries(std::move(phi), N, 0.0),
                             TruncatedSeries(std::move(g), N, 0.0), residual, N};
}

// ---------------------------------------------------------------------------
// Wandering bases of finitely generated invariant subspaces
// ---------------------------------------------------------------------------

struct WanderingBasis {
  std::vector<FreePoly> basis;  ///< orthonormal; flipped entries are inner
  int degree = 0;
  double gram_defect = 0.0;
  std::vector<double> singular_values;  ///< of the projected-generator bundle
};

/// Orthonormal basis of L = M ⊖ (S_1 M + ... + S_n M) for the truncated
/// invariant subspace M generated by the given polynomials: M is spanned by
/// {e_p (x) v : |p| + deg v <= N} and the shifted part by the same vectors
/// with p nonempty, so L is spanned by the generators' residuals after
/// projecting off the shifted span. Rank is decided by SVD with threshold
/// 1e-9 * sigma_max.
inline WanderingBasis wandering_basis(const std::vector<FreePoly>& generators, int N,
                                      const IterationOptions& opt = {}) {
  if (generators.empty()) throw std::invalid_argument("need at least one generator");
  const int n = generators.front().alphabet();
  for (const auto& v : generators) {
    if (v.is_zero()) throw std::invalid_argument("generators must be nonzero");
    if (v.alphabet() != n) throw std::invalid_argument("generators mix alphabets");
    if (v.degree() > N) throw std::invalid_argument("generator degree exceeds truncation");
  }
  if (generators.size() > 256) throw ResourceLimitError("too many generators (max 256)");
  if (words_up_to(n, N) > opt.max_columns)
    throw ResourceLimitError("wandering truncation exceeds the column cap");

  const WordIndexer rows(n, N);
  std::vector<Eigen::Triplet<Complex>> trip;
  std::uint64_t col = 0;
  for (const auto& v : generators) {
    const int K = N - v.degree();
    if (K < 1) continue;
    const WordIndexer prefixes(n, K);
    for (std::uint64_t j = 1; j < prefixes.count(); ++j, ++col) {
      const Word p = prefixes.word_at(j);
      for (const auto& [f, c] : v.terms())
        trip.emplace_back(static_cast<int>(rows.index_of(concat(p, f))),
                          static_cast<int>(col), c);
    }
  }
  SparseMatrix U(static_cast<Eigen::Index>(rows.count()), static_cast<Eigen::Index>(col));
  U.setFromTriplets(trip.begin(), trip.end());

  DenseMatrix R(static_cast<Eigen::Index>(rows.count()),
                static_cast<Eigen::Index>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j)
    R.col(static_cast<Eigen::Index>(j)) =
        detail::least_squares_residual(U, detail::poly_to_vector(generators[j], rows), opt);

  Eigen::BDCSVD<DenseMatrix> svd(R, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  WanderingBasis out;
  out.degree = N;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double thresh = std::max(1e-9 * smax, 1e-12);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < thresh) break;
    out.basis.push_back(detail::vector_to_poly(svd.matrixU().col(i), rows, n));
  }
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ip = inner_product(out.basis[i], out.basis[j]);
      const double target = (i == j) ? 1.0 : 0.0;
      out.gram_defect = std::max(out.gram_defect, std::abs(ip - Complex(target, 0.0)));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Division by an inner function
// ---------------------------------------------------------------------------

struct DivisionResult {
  bool divisible = false;
  TruncatedSeries quotient;
  double residual = 0.0;
  InnerCheckResult quotient_check;
};

/// Attempts phi1 = phi2 (x) phi3 with phi3 inner, for inner phi1 and phi2
/// (checked as a precondition, with each input's own tail allowance). The
/// only candidate is the adjoint transport c_h = <phi1, phi2 (x) e_h>;
/// divisibility holds when the reconstruction residual vanishes within
/// tol plus the input tails and the candidate itself is inner. The quotient
/// inherits the input tails as its allowance — an accounting device, not a
/// certified bound on its own discarded part.
inline DivisionResult inner_divide(const TruncatedSeries& phi1, const TruncatedSeries& phi2,
                                   int N, double tol = kDefaultTol) {
  if (phi1.poly.is_zero() || phi2.poly.is_zero())
    throw std::invalid_argument("division needs nonzero polynomials");
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  if (!is_inner(phi1, tol).inner)
    throw std::invalid_argument("dividend is not inner within tolerance");
  if (!is_inner(phi2, tol).inner)
    throw std::invalid_argument("divisor is not inner within tolerance");
  FreePoly c = truncated(detail::adjoint_coefficients(phi1.poly, phi2.poly), N);
  const double residual = norm2(phi1.poly - tensor(phi2.poly, c));
  const double slack = phi1.tail_bound + phi2.tail_bound * (norm2(c) + 1.0);
  TruncatedSeries quotient(std::move(c), N, phi1.tail_bound + phi2.tail_bound);
  InnerCheckResult chk = is_inner(quotient, tol);
  const bool ok = residual <= tol + slack && chk.inner;
  return DivisionResult{ok, std::move(quotient), residual, chk};
}

inline DivisionResult inner_divide(const FreePoly& phi1, const FreePoly& phi2, int N,
                                   double tol = kDefaultTol) {
  return inner_divide(TruncatedSeries::exact(phi1), TruncatedSeries::exact(phi2), N, tol);
}

// ---------------------------------------------------------------------------
// Formal inverses and invertibility
// ---------------------------------------------------------------------------

struct FormalInverseResult {
  TruncatedSeries inverse;
  std::vector<double> partial_norms;  ///< || inverse through degree m ||_2
  NormEstimate multiplier_estimate;    ///< linf lower bound of a low-degree cut
  bool tail_certified = false;        ///< geometric tail bound applied
};

/// The formal inverse through degree N by the graded recursion; requires a
/// nonzero constant term. Partial norms expose divergence: for genuinely
/// non-invertible inputs they grow geometrically, and the multiplier-norm
/// estimate of a low-degree cut gives a second diagnostic (bounded values are
/// consistent with invertibility in the multiplier algebra). A tail bound is
/// certified only when the l^1 mass above the constant term is dominated by
/// it.
inline FormalInverseResult formal_inverse(const FreePoly& phi, int N,
                                          std::size_t max_terms = kDefaultColumnCap,
                                          const IterationOptions& opt = {}) {
  FreePoly inv = detail::graded_inverse(phi, N, max_terms);
  std::vector<double> norms;
  norms.reserve(static_cast<std::size_t>(N) + 1);
  double acc = 0.0;
  int d = 0;
  for (const auto& [w, c] : inv.terms()) {
    while (d < static_cast<int>(w.size())) {
      norms.push_back(std::sqrt(acc));
      ++d;
    }
    acc += std::norm(c);
  }
  while (d <= N) {
    norms.push_back(std::sqrt(acc));
    ++d;
  }

  const Complex a0 = phi.coeff(Word{});
  FreePoly plus = phi;
  plus.set_coeff(Word{}, Complex(0.0, 0.0));
  const double r = l1_upper_bound(plus) / std::abs(a0);
  double tail = 0.0;
  bool certified = false;
  if (r < 1.0) {
    const int dmax = std::max(plus.degree(), 1);
    const int J = (N + dmax) / dmax;
    tail = std::pow(r, J) / (std::abs(a0) * (1.0 - r));
    certified = true;
  }
  const NormEstimate mult =
      linf_lower(truncated(inv, std::min(N, 6)), std::min(N, 4), opt);
  return FormalInverseResult{TruncatedSeries(std::move(inv), N, tail),
                             std::move(norms), mult, certified};
}

enum class Invertibility { Invertible, NotInvertible, Inconclusive };

struct InvertibilityReport {
  std::vector<double> outer_dists;
  std::vector<int> sigma_degrees;
  std::vector<NormEstimate> sigma_profile;
  std::vector<double> inverse_norms;  ///< empty when the constant term is zero
  Invertibility verdict = Invertibility::Inconclusive;
  std::string reason;
};

/// Invertibility in the multiplier algebra = outer (distance profile reaches
/// tol) AND bounded below (sigma_min profile stays above sigma_floor). The
/// negative direction reports the strongest evidence available: an outer
/// profile that has stopped decreasing, or geometric growth of the formal
/// inverse. Anything else is Inconclusive — finite sections cannot certify a
/// limit on their own.
inline InvertibilityReport invertibility_report(const FreePoly& phi, int N,
                                                double tol = kDefaultTol,
                                                double sigma_floor = 1e-6,
                                                const IterationOptions& opt = {}) {
  if (phi.is_zero()) throw std::invalid_argument("invertibility needs a nonzero polynomial");
  InvertibilityReport rep;
  rep.outer_dists = outer_profile(phi, N, opt);
  for (int m = 0; m <= N; ++m) {
    if (words_up_to(phi.alphabet(), m) > opt.max_columns) break;
    rep.sigma_degrees.push_back(m);
  }
  rep.sigma_profile = sigma_min_lower_profile(phi, rep.sigma_degrees, opt);

  if (std::abs(phi.coeff(Word{})) > 0.0) {
    std::size_t cap = std::min<std::size_t>(opt.max_columns, 1'000'000);
    try {
      rep.inverse_norms = formal_inverse(phi, N, cap, opt).partial_norms;
    } catch (const ResourceLimitError&) {
      // Inverse support exploded; the remaining diagnostics still stand.
    }
  }

  const double dist_final = rep.outer_dists.back();
  const bool outer_ok = dist_final <= tol;
  double sigma_final = 0.0;
  bool sigma_known = false;
  for (auto it = rep.sigma_profile.rbegin(); it != rep.sigma_profile.rend(); ++it)
    if (it->converged) {
      sigma_final = it->value;
      sigma_known = true;
      break;
    }

  const double dist_mid = rep.outer_dists[rep.outer_dists.size() / 2];
  const bool outer_plateau = !outer_ok && dist_final >= 0.8 * dist_mid;
  bool inverse_diverges = false;
  if (rep.inverse_norms.size() >= 6) {
    const double head = rep.inverse_norms[rep.inverse_norms.size() - 6];
    const double tail = rep.inverse_norms.back();
    inverse_diverges = head > 0.0 && tail / head > std::pow(1.05, 5.0);
  }

  if (outer_ok && sigma_known && sigma_final >= sigma_floor) {
    rep.verdict = Invertibility::Invertible;
    rep.reason = "outer distance " + std::to_string(dist_final) +
                 " within tolerance and sigma_min " + std::to_string(sigma_final) +
                 " bounded away from zero";
  } else if (rep.inverse_norms.empty() && std::abs(phi.coeff(Word{})) == 0.0) {
    rep.verdict = Invertibility::NotInvertible;
    rep.reason = "constant term is zero: e_0 is orthogonal to the range";
  } else if (outer_plateau || inverse_diverges) {
    rep.verdict = Invertibility::NotInvertible;
    rep.reason = outer_plateau
                     ? "outer distance plateaus at " + std::to_string(dist_final)
                     : "formal inverse norms grow geometrically";
  } else {
    rep.verdict = Invertibility::Inconclusive;
    rep.reason = "profiles neither certify a bound below nor a plateau";
  }
  return rep;
}

}  // namespace fock
