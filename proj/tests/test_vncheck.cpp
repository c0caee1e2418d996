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
#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace fock;

TEST_CASE("random row contractions sit on the boundary, deterministically",
          "[vncheck]") {
  const MatrixTuple a = random_row_contraction(2, 5, 12345);
  CHECK(std::abs(a.row_bound() - 1.0) < 1e-12);
  CHECK(a.n() == 2);
  CHECK(a.dim() == 5);

  const MatrixTuple b = random_row_contraction(2, 5, 12345);
  for (int i = 0; i < 2; ++i)
    CHECK((a.T[static_cast<std::size_t>(i)] - b.T[static_cast<std::size_t>(i)]).norm() ==
          0.0);

  const MatrixTuple c = random_row_contraction(2, 5, 54321);
  CHECK((a.T[0] - c.T[0]).norm() > 1e-6);

  CHECK(MatrixTuple{}.row_bound() == 0.0);
  CHECK_THROWS_AS(random_row_contraction(0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_row_contraction(2, 0, 1), std::invalid_argument);
}

TEST_CASE("polynomial evaluation on tuples is the word-product calculus",
          "[vncheck]") {
  const MatrixTuple t = random_row_contraction(2, 4, 7);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(4, 4);

  CHECK((evaluate(FreePoly::one(2), t) - I).norm() < 1e-15);
  CHECK((evaluate(monomial(2, Word{1}), t) - t.T[0]).norm() < 1e-15);
  CHECK((evaluate(monomial(2, Word{1, 2}), t) - t.T[0] * t.T[1]).norm() < 1e-14);

  std::mt19937_64 rng(901);
  const FreePoly a = test::random_poly(2, 3, 4, rng);
  const FreePoly b = test::random_poly(2, 3, 4, rng);
  CHECK((evaluate(a + b, t) - (evaluate(a, t) + evaluate(b, t))).norm() < 1e-12);
  CHECK((evaluate(tensor(a, b), t) - evaluate(a, t) * evaluate(b, t)).norm() < 1e-11);

  CHECK_THROWS_AS(evaluate(FreePoly::one(3), t), std::invalid_argument);
}

TEST_CASE("no random contraction ever beats the multiplier bound", "[vncheck]") {
  std::mt19937_64 rng(902);
  for (int trial = 0; trial < 5; ++trial) {
    const FreePoly p = test::random_poly(2, 3, 5, rng);
    const VnReport rep = vn_check(p, {2, 3}, 30, 1000 + static_cast<std::uint64_t>(trial));
    INFO("trial " << trial);
    CHECK(rep.violations == 0);
    CHECK(rep.l1_bound == l1_upper_bound(p));
    CHECK(rep.homogeneous == (p.min_degree() == p.degree()));
    CHECK(rep.per_dim.size() == 2);
    for (const VnDimStats& st : rep.per_dim) {
      CHECK(st.samples == 30);
      CHECK(st.mean_norm <= st.max_norm + 1e-12);
      CHECK(st.max_norm <= rep.max_over_all);
    }
  }
  CHECK_THROWS_AS(vn_check(FreePoly::one(2), {2}, 0, 1), std::invalid_argument);
}

TEST_CASE("homogeneous polynomials use the sharp l2 bound", "[vncheck]") {
  const FreePoly p = normalized(monomial(2, Word{1}) + monomial(2, Word{2}));
  const VnReport rep = vn_check(p, {2, 4, 6}, 50, 99);
  CHECK(rep.homogeneous);
  CHECK(std::abs(rep.l2_norm - 1.0) < 1e-14);
  CHECK(std::abs(rep.bound_used - 1.0) < 1e-14);
  CHECK(rep.violations == 0);
  CHECK(rep.max_over_all <= 1.0 + 1e-8);
  // The bound is attained in the limit; random boundary tuples get close.
  CHECK(rep.max_over_all >= 0.5);
}

TEST_CASE("scalar contractions nearly attain the l1 bound of 1 + z", "[vncheck]") {
  FreePoly p(1);
  p.set_coeff(Word{}, 1.0);
  p.set_coeff(Word{1}, 1.0);
  const VnReport rep = vn_check(p, {1}, 100, 42);
  // Dimension one: T = (t) with |t| = 1, so ||p(T)|| = |1 + t| <= 2 with
  // equality approached as the random phase nears zero.
  CHECK(rep.violations == 0);
  CHECK(rep.max_over_all <= 2.0 + 1e-12);
  CHECK(rep.max_over_all >= 1.8);

  // Determinism of the whole report.
  const VnReport again = vn_check(p, {1}, 100, 42);
  CHECK(again.max_over_all == rep.max_over_all);
  CHECK(again.per_dim[0].mean_norm == rep.per_dim[0].mean_norm);
}

TEST_CASE("compressed shifts reproduce the finite section", "[vncheck]") {
  const int N = 4;
  const std::vector<SparseMatrix> T = compressed_shift_tuple(2, N);
  REQUIRE(T.size() == 2);
  const std::uint64_t W = words_up_to(2, N);
  CHECK(static_cast<std::uint64_t>(T[0].rows()) == W);

  std::mt19937_64 rng(903);
  const FreePoly p = test::random_poly(2, 3, 5, rng);
  const DenseMatrix compressed(sparse_evaluate(p, T));
  const FiniteSection s = finite_section(p, N);
  const DenseMatrix full(s.matrix);
  // p(P S P) = P p(S) P: the compression is the square top block of the
  // section because the shifts only raise degree.
  CHECK((compressed - full.topRows(static_cast<Eigen::Index>(W))).norm() < 1e-13);

  // And its norm can only fall below the section lower bound.
  const double compressed_norm = sparse_operator_norm(sparse_evaluate(p, T));
  CHECK(compressed_norm <= linf_lower(p, N).value + 1e-10);

  CHECK_THROWS_AS(compressed_shift_tuple(3, 13), ResourceLimitError);
  CHECK_THROWS_AS(sparse_evaluate(FreePoly::one(3), T), std::invalid_argument);
  CHECK_THROWS_AS(sparse_evaluate(FreePoly::one(1), std::vector<SparseMatrix>{}),
                  std::invalid_argument);
}
