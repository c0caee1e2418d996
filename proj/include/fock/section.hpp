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

#include <ostream>
#include <vector>

#include <Eigen/SparseCore>
#include <json.hpp>

#include "fock/poly.hpp"

namespace fock {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// The matrix of left multiplication by a polynomial, restricted to the
/// degree-N truncation: columns are indexed by words g with |g| <= N in
/// graded-lex order, rows by words of length <= N + deg(phi), and column g
/// holds the coefficients of phi (x) e_g. Each column has one entry per
/// support word of phi (the section of an isometry has orthonormal columns).
struct FiniteSection {
  int alphabet;
  int source_degree;  ///< truncation degree N of the domain
  int target_degree;  ///< N + max(deg phi, 0)
  WordIndexer cols;
  WordIndexer rows;
  SparseMatrix matrix;  ///< rows.count() x cols.count()
};

/// Builds the finite section of left multiplication by phi at truncation
/// degree N. Throws ResourceLimitError when the column count would exceed
/// max_columns (the matrix is never materialized in that case).
inline FiniteSection finite_section(const FreePoly& phi, int N,
                                    std::size_t max_columns = kDefaultColumnCap) {
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");
  const int n = phi.alphabet();
  const std::uint64_t ncols = words_up_to(n, N);
  if (ncols > max_columns)
    throw ResourceLimitError("finite section needs " + std::to_string(ncols) +
                             " columns, cap is " + std::to_string(max_columns));
  const int dphi = std::max(phi.degree(), 0);
  FiniteSection s{n, N, N + dphi, WordIndexer(n, N), WordIndexer(n, N + dphi), {}};

  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(static_cast<std::size_t>(ncols) * phi.support_size());
  for (std::uint64_t j = 0; j < ncols; ++j) {
    const Word g = s.cols.word_at(j);
    for (const auto& [f, a] : phi.terms()) {
      const std::uint64_t i = s.rows.index_of(concat(f, g));
      trip.emplace_back(static_cast<int>(i), static_cast<int>(j), a);
    }
  }
  s.matrix.resize(static_cast<Eigen::Index>(s.rows.count()),
                  static_cast<Eigen::Index>(ncols));
  s.matrix.setFromTriplets(trip.begin(), trip.end());
  return s;
}

/// Writes the section in Matrix Market coordinate format (complex, general),
/// entries in column-major order with 1-based indices.
inline void write_matrix_market(const FiniteSection& s, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << "% finite section of left multiplication; columns = words of length <= "
      << s.source_degree << ", graded-lex order\n";
  out << s.matrix.rows() << ' ' << s.matrix.cols() << ' ' << s.matrix.nonZeros() << '\n';
  for (int k = 0; k < s.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s.matrix, k); it; ++it)
      out << (it.row() + 1) << ' ' << (it.col() + 1) << ' ' << it.value().real() << ' '
          << it.value().imag() << '\n';
}

/// The index <-> word table that accompanies a Matrix Market export: words as
/// letter arrays, position in the array = matrix index.
inline nlohmann::json word_table_json(const FiniteSection& s) {
  auto table = [](const WordIndexer& ix) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::uint64_t i = 0; i < ix.count(); ++i) arr.push_back(ix.word_at(i).letters_int());
    return arr;
  };
  return {{"n", s.alphabet}, {"cols", table(s.cols)}, {"rows", table(s.rows)}};
}

}  // namespace fock
