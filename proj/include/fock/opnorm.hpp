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

#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "fock/section.hpp"

namespace fock {

/// A one-sided or two-sided certified estimate of a nonnegative quantity.
///
/// For multiplier norms, `value` is the largest singular value found for the
/// finite section: a genuine lower bound that increases monotonically with
/// the truncation degree. `upper` carries the best available upper bound
/// (the l^1 bound for polynomials). When the input was a truncated series the
/// interval is widened by the tail bound and `tail_heuristic` is set: the
/// discarded tail's multiplier norm is not computable from its l^2 size, so
/// the widened interval is a best effort, not a certificate.
struct NormEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool converged = false;
  bool tail_heuristic = false;
  int iterations = 0;
};

struct IterationOptions {
  int max_iterations = 10'000;
  double rel_residual = 1e-10;
  int restarts = 3;
  std::uint64_t seed = 0x5eedf0c4u;
  std::size_t max_columns = kDefaultColumnCap;
  std::size_t dense_cutoff = 600;    ///< below this many columns, use dense SVD
  std::size_t factor_cutoff = 40'000;  ///< cap for sparse factorization paths
};

namespace detail {

inline DenseVector random_unit_vector(Eigen::Index size, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = Complex(g(rng), g(rng));
  double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v[0] = Complex(1.0, 0.0);
    n = 1.0;
  }
  return v / n;
}

/// Largest singular value of a sparse matrix by power iteration on the
/// normal operator A*A. The Rayleigh quotient of a unit vector never exceeds
/// the top eigenvalue, so the returned value is a certified lower bound for
/// sigma_max even when the iteration cap is hit before the residual test
/// passes. Restarts draw fresh random vectors (no deflation) and the best
/// value over all runs is kept.
inline double sigma_max_power(const SparseMatrix& A, const IterationOptions& opt,
                              bool* converged, int* iterations_used) {
  *converged = true;
  *iterations_used = 0;
  if (A.rows() == 0 || A.cols() == 0 || A.nonZeros() == 0) return 0.0;

  std::mt19937_64 rng(opt.seed);
  double best = 0.0;
  bool any_converged = false;
  int budget = opt.max_iterations;
  const int runs = std::max(opt.restarts, 1);
  for (int run = 0; run < runs && budget > 0; ++run) {
    DenseVector v = random_unit_vector(A.cols(), rng);
    bool run_converged = false;
    const int run_budget = (run == 0) ? budget : std::min(budget, opt.max_iterations / 4 + 1);
    for (int it = 0; it < run_budget; ++it) {
      ++*iterations_used;
      --budget;
      DenseVector w = A * v;
      const double rho2 = w.squaredNorm();  // Rayleigh quotient of A*A at unit v
      if (rho2 > best * best) best = std::sqrt(rho2);
      DenseVector u = A.adjoint() * w;
      const double resid = (u - rho2 * v).norm();
      if (resid <= opt.rel_residual * std::max(rho2, 1e-300)) {
        run_converged = true;
        break;
      }
      const double un = u.norm();
      if (un == 0.0) {
        v = random_unit_vector(A.cols(), rng);
        continue;
      }
      v = u / un;
    }
    any_converged = any_converged || run_converged;
    if (!run_converged && run == 0) break;  // burned the budget; restarts won't finish either
  }
  *converged = any_converged;
  return best;
}

/// Smallest singular value. Dense SVD below the dense cutoff; otherwise
/// inverse iteration with a sparse Cholesky factorization of A*A. Returns
/// false (and an uninformative interval) when the section is too large for
/// either path.
inline bool sigma_min_compute(const SparseMatrix& A, const IterationOptions& opt,
                              double* sigma, bool* converged) {
  *sigma = 0.0;
  *converged = false;
  if (A.cols() == 0) return false;
  if (A.nonZeros() == 0) {
    *sigma = 0.0;
    *converged = true;
    return true;
  }
  if (static_cast<std::size_t>(A.cols()) <= opt.dense_cutoff) {
    DenseMatrix dense(A);
    Eigen::BDCSVD<DenseMatrix> svd(dense);
    *sigma = svd.singularValues()(svd.singularValues().size() - 1);
    *converged = true;
    return true;
  }
  if (static_cast<std::size_t>(A.cols()) > opt.factor_cutoff) return false;

  SparseMatrix B = (SparseMatrix(A.adjoint()) * A).pruned();
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower> ldlt;
  ldlt.compute(B);
  if (ldlt.info() != Eigen::Success) {
    // Singular or indefinite to working precision: shift by a hair and retry.
    double tr = 0.0;
    for (int k = 0; k < B.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(B, k); it; ++it)
        if (it.row() == it.col()) tr += it.value().real();
    SparseMatrix I(B.rows(), B.cols());
    I.setIdentity();
    ldlt.compute(B + (1e-12 * tr / static_cast<double>(B.rows())) * I);
    if (ldlt.info() != Eigen::Success) return false;
  }

  std::mt19937_64 rng(opt.seed ^ 0x51617d1full);
  DenseVector v = random_unit_vector(B.cols(), rng);
  double lambda = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    DenseVector x = ldlt.solve(v);
    const double xn = x.norm();
    if (!std::isfinite(xn) || xn == 0.0) break;
    v = x / xn;
    DenseVector Bv = B * v;
    lambda = std::real(v.dot(Bv));
    const double resid = (Bv - lambda * v).norm();
    if (resid <= opt.rel_residual * std::max(std::abs(lambda), 1e-300) ||
        resid <= 1e-14 * B.rows()) {
      *converged = true;
      break;
    }
  }
  *sigma = std::sqrt(std::max(lambda, 0.0));
  return true;
}

}  // namespace detail

/// Monotone lower bound for the left-multiplier norm of phi: the largest
/// singular value of the degree-N finite section. Nondecreasing in N, with
/// limit equal to the multiplier norm itself; the l^1 coefficient bound caps
/// it from above.
inline NormEstimate linf_lower(const FreePoly& phi, int N,
                               const IterationOptions& opt = {}) {
  NormEstimate e;
  e.upper = l1_upper_bound(phi);
  if (phi.is_zero()) {
    e.converged = true;
    return e;
  }
  FiniteSection s = finite_section(phi, N, opt.max_columns);
  e.value = detail::sigma_max_power(s.matrix, opt, &e.converged, &e.iterations);
  e.lower = e.value;
  e.upper = std::max(e.upper, e.lower);
  return e;
}

/// Series variant: estimates the polynomial part and widens the interval by
/// the l^2 tail bound. The widening is heuristic (see NormEstimate).
inline NormEstimate linf_lower(const TruncatedSeries& s, int N,
                               const IterationOptions& opt = {}) {
  NormEstimate e = linf_lower(s.poly, N, opt);
  if (s.tail_bound > 0.0) {
    e.upper = std::max(e.upper + s.tail_bound, e.value + s.tail_bound);
    e.tail_heuristic = true;
  }
  return e;
}

struct LinfEstimateResult {
  NormEstimate estimate;            ///< the value at the final degree reached
  std::vector<double> history;      ///< lower bounds at N = 0, 1, ...
  int final_degree = 0;
  bool stabilized = false;          ///< successive bounds within tol before caps
};

/// Drives linf_lower over increasing truncation degrees until successive
/// values agree within tol, the degree cap is reached, or the next section
/// would exceed the column cap (reported, not thrown).
inline LinfEstimateResult linf_estimate(const FreePoly& phi, double tol, int max_degree,
                                        const IterationOptions& opt = {}) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  LinfEstimateResult r;
  double prev = -1.0;
  for (int N = 0; N <= max_degree; ++N) {
    if (words_up_to(phi.alphabet(), N) > opt.max_columns) break;
    r.estimate = linf_lower(phi, N, opt);
    r.history.push_back(r.estimate.value);
    r.final_degree = N;
    if (prev >= 0.0 && std::abs(r.estimate.value - prev) < tol) {
      r.stabilized = true;
      break;
    }
    prev = r.estimate.value;
  }
  return r;
}

/// Norm of right multiplication by psi, computed through the flip identity:
/// right multiplication by psi is unitarily equivalent to left multiplication
/// by flip(psi). (Left and right norms genuinely differ; the flip is not
/// bounded as a map of multipliers.)
inline NormEstimate right_mult_norm(const FreePoly& psi, int N,
                                    const IterationOptions& opt = {}) {
  return linf_lower(flip(psi), N, opt);
}

/// Smallest singular values of the finite sections at each requested degree:
/// a nonincreasing profile whose infimum is the best lower bound delta with
/// ||phi (x) p|| >= delta ||p|| for all polynomials p. Entries report
/// converged=false (with interval [0, sigma_max]) when a section is too large
/// for the dense or factorization paths.
inline std::vector<NormEstimate> sigma_min_lower_profile(const FreePoly& phi,
                                                         const std::vector<int>& degrees,
                                                         const IterationOptions& opt = {}) {
  std::vector<NormEstimate> out;
  out.reserve(degrees.size());
  for (int N : degrees) {
    NormEstimate e;
    if (phi.is_zero()) {
      e.converged = true;
      out.push_back(e);
      continue;
    }
    FiniteSection s = finite_section(phi, N, opt.max_columns);
    double sigma = 0.0;
    bool conv = false;
    if (detail::sigma_min_compute(s.matrix, opt, &sigma, &conv)) {
      e.value = sigma;
      e.lower = conv ? sigma : 0.0;
      e.upper = sigma;
      e.converged = conv;
    } else {
      bool c2 = false;
      int it2 = 0;
      e.value = 0.0;
      e.lower = 0.0;
      e.upper = detail::sigma_max_power(s.matrix, opt, &c2, &it2);
      e.converged = false;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace fock
