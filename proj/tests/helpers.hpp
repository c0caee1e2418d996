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

#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fock/fock.hpp"

namespace fock::test {

inline Word random_word(int alphabet, int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, alphabet);
  std::vector<int> ls(static_cast<std::size_t>(len(rng)));
  for (auto& l : ls) l = letter(rng);
  return Word(ls);
}

/// Random polynomial with coefficient moduli bounded away from zero (so
/// products never fall under the pruning threshold) and random phases.
inline FreePoly random_poly(int alphabet, int max_degree, int terms, std::mt19937_64& rng) {
  FreePoly p(alphabet);
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < terms; ++t)
    p.set_coeff(random_word(alphabet, max_degree, rng), std::polar(mag(rng), ang(rng)));
  if (p.is_zero()) p.set_coeff(Word{}, Complex(1.0, 0.0));
  return p;
}

inline FreePoly random_unit_poly(int alphabet, int max_degree, int terms,
                                 std::mt19937_64& rng) {
  return normalized(random_poly(alphabet, max_degree, terms, rng));
}

inline double dist2(const FreePoly& a, const FreePoly& b) { return norm2(a - b); }

inline DenseMatrix dense_section(const FreePoly& phi, int N) {
  return DenseMatrix(finite_section(phi, N).matrix);
}

inline double svd_sigma_max(const DenseMatrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(A);
  return svd.singularValues()(0);
}

inline double svd_sigma_min(const DenseMatrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(A);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

/// Least-squares distance ||b - A x*|| by (independent) dense SVD solve.
inline double svd_lstsq_distance(const DenseMatrix& A, const DenseVector& b) {
  Eigen::JacobiSVD<DenseMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return (b - A * svd.solve(b)).norm();
}

}  // namespace fock::test
