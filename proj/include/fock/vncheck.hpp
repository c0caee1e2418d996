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

#include <vector>

#include <Eigen/Dense>

#include "fock/opnorm.hpp"

namespace fock {

/// A tuple (T_1, ..., T_n) of d x d complex matrices forming a row
/// contraction: || sum_i T_i T_i^* || <= 1. The multiplier norm dominates
/// ||p(T)|| for every such tuple — the noncommutative von Neumann inequality
/// this module exercises.
struct MatrixTuple {
  std::vector<Eigen::MatrixXcd> T;

  int n() const { return static_cast<int>(T.size()); }
  Eigen::Index dim() const { return T.empty() ? 0 : T.front().rows(); }

  /// sqrt of || sum_i T_i T_i^* ||: <= 1 + eps for a row contraction.
  double row_bound() const {
    if (T.empty()) return 0.0;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& Ti : T) S += Ti * Ti.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// A random tuple of complex Ginibre matrices scaled onto the boundary of
/// the row-contraction ball (|| sum T T* || = 1): boundary normalization
/// makes the inequality as tight as random sampling can. Deterministic in
/// (n, d, seed).
inline MatrixTuple random_row_contraction(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("need n >= 1 matrices of dim >= 1");
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixTuple t;
  t.T.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd M(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) M(r, c) = Complex(g(rng), g(rng));
    t.T.push_back(std::move(M));
  }
  const double s = t.row_bound();
  if (s > 0.0)
    for (auto& Ti : t.T) Ti /= s;
  return t;
}

/// p(T_1, ..., T_n) = sum over support of a_f T_{f(1)} ... T_{f(k)}, with the
/// empty word contributing a_0 I.
inline Eigen::MatrixXcd evaluate(const FreePoly& p, const MatrixTuple& t) {
  if (p.alphabet() != t.n())
    throw std::invalid_argument("polynomial alphabet does not match tuple size");
  const Eigen::Index d = t.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [w, c] : p.terms()) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(d, d);
    for (auto l : w.letters()) M = M * t.T[static_cast<std::size_t>(l - 1)];
    out += c * M;
  }
  return out;
}

/// Spectral norm of a dense matrix (largest singular value).
inline double operator_norm(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

struct VnDimStats {
  int dim = 0;
  int samples = 0;
  double max_norm = 0.0;
  double mean_norm = 0.0;
};

struct VnReport {
  double l1_bound = 0.0;      ///< always a valid upper bound for ||p(T)||
  double l2_norm = 0.0;       ///< equals the multiplier norm when homogeneous
  bool homogeneous = false;
  double bound_used = 0.0;    ///< min of the applicable upper bounds
  std::vector<VnDimStats> per_dim;
  double max_over_all = 0.0;
  int violations = 0;         ///< samples with ||p(T)|| > bound_used + tol
  double tol = 0.0;
};

/// Samples random boundary-normalized row contractions in each dimension and
/// reports max/mean of ||p(T)|| against the applicable upper bound: the l^1
/// coefficient bound always, sharpened to ||p||_2 for homogeneous p (where
/// the multiplier norm equals the l^2 norm). Any sample exceeding the bound
/// beyond tol counts as a violation — there should never be one.
inline VnReport vn_check(const FreePoly& p, const std::vector<int>& dims, int samples,
                         std::uint64_t seed, double tol = 1e-8) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  VnReport rep;
  rep.tol = tol;
  rep.l1_bound = l1_upper_bound(p);
  rep.l2_norm = norm2(p);
  rep.homogeneous = !p.is_zero() && p.min_degree() == p.degree();
  rep.bound_used = rep.homogeneous ? std::min(rep.l1_bound, rep.l2_norm) : rep.l1_bound;
  std::uint64_t stream = 0;
  for (int d : dims) {
    VnDimStats st;
    st.dim = d;
    st.samples = samples;
    for (int s = 0; s < samples; ++s) {
      MatrixTuple t = random_row_contraction(p.alphabet(), d,
                                             detail::splitmix64(seed) ^ ++stream);
      const double nm = operator_norm(evaluate(p, t));
      st.max_norm = std::max(st.max_norm, nm);
      st.mean_norm += nm / samples;
      if (nm > rep.bound_used + tol) ++rep.violations;
    }
    rep.max_over_all = std::max(rep.max_over_all, st.max_norm);
    rep.per_dim.push_back(st);
  }
  return rep;
}

/// The compressions P S_i P of the shifts to the degree <= N truncation:
/// since shifts raise degree, p(PSP) = P p(S) P exactly, which ties matrix
/// functional calculus to finite sections.
inline std::vector<SparseMatrix> compressed_shift_tuple(int n, int N,
                                                        std::size_t max_columns = kDefaultColumnCap) {
  const std::uint64_t W = words_up_to(n, N);
  if (W > max_columns)
    throw ResourceLimitError("compressed shifts need " + std::to_string(W) + " columns");
  WordIndexer ix(n, N);
  std::vector<SparseMatrix> T;
  T.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (std::uint64_t j = 0; j < W; ++j) {
      const Word g = ix.word_at(j);
      if (static_cast<int>(g.size()) >= N) continue;  // S_i e_g leaves the truncation
      trip.emplace_back(static_cast<int>(ix.index_of(concat(Word{i}, g))),
                        static_cast<int>(j), Complex(1.0, 0.0));
    }
    SparseMatrix M(static_cast<Eigen::Index>(W), static_cast<Eigen::Index>(W));
    M.setFromTriplets(trip.begin(), trip.end());
    T.push_back(std::move(M));
  }
  return T;
}

/// p evaluated on a tuple of sparse matrices (products stay sparse for the
/// compressed shifts, whose columns are subpermutations).
inline SparseMatrix sparse_evaluate(const FreePoly& p, const std::vector<SparseMatrix>& T) {
  if (p.alphabet() != static_cast<int>(T.size()))
    throw std::invalid_argument("polynomial alphabet does not match tuple size");
  if (T.empty()) throw std::invalid_argument("empty tuple");
  const Eigen::Index d = T.front().rows();
  SparseMatrix out(d, d);
  SparseMatrix I(d, d);
  I.setIdentity();
  for (const auto& [w, c] : p.terms()) {
    SparseMatrix M = I;
    for (auto l : w.letters()) M = (M * T[static_cast<std::size_t>(l - 1)]).pruned();
    out = out + SparseMatrix(c * M);
  }
  return out;
}

/// Spectral norm of a sparse matrix via the shared power iteration.
inline double sparse_operator_norm(const SparseMatrix& M, const IterationOptions& opt = {}) {
  bool conv = false;
  int iters = 0;
  return detail::sigma_max_power(M, opt, &conv, &iters);
}

}  // namespace fock
