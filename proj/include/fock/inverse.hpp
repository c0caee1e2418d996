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

#include "fock/poly.hpp"

namespace fock::detail {

/// The formal inverse of psi through degree N by the graded recursion
///
///   b_empty = 1 / a_empty,
///   b_h     = -(1/a_empty) * sum over splittings h = f.g with f nonempty
///             of a_f * b_g,
///
/// which is exact: degree-d coefficients depend only on lower degrees. The
/// support is generated bottom-up (only words reachable as concatenations of
/// support words of psi ever appear), capped at max_terms.
inline FreePoly graded_inverse(const FreePoly& psi, int N, std::size_t max_terms) {
  const Complex a0 = psi.coeff(Word{});
  if (std::abs(a0) == 0.0)
    throw std::invalid_argument("formal inverse needs a nonzero constant term");
  if (N < 0) throw std::invalid_argument("truncation degree must be >= 0");

  using Level = std::map<Word, Complex, GradedLess>;
  std::vector<Level> levels(static_cast<std::size_t>(N) + 1);
  levels[0][Word{}] = Complex(1.0, 0.0) / a0;
  std::size_t total = 1;

  for (int d = 1; d <= N; ++d) {
    Level acc;
    for (const auto& [f, a] : psi.terms()) {
      const int lf = static_cast<int>(f.size());
      if (lf < 1) continue;
      if (lf > d) break;  // graded order
      for (const auto& [g, b] : levels[static_cast<std::size_t>(d - lf)])
        acc[concat(f, g)] -= a * b;
    }
    Level& out = levels[static_cast<std::size_t>(d)];
    for (auto& [h, c] : acc) {
      const Complex bh = c / a0;
      if (std::abs(bh) < kCoeffPrune) continue;
      out.emplace(h, bh);
      if (++total > max_terms)
        throw ResourceLimitError("formal inverse support exceeds " +
                                 std::to_string(max_terms) + " terms");
    }
  }

  FreePoly r(psi.alphabet());
  for (const auto& level : levels)
    for (const auto& [h, c] : level) r.set_coeff(h, c);
  return r;
}

}  // namespace fock::detail
