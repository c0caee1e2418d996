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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fock {

using Complex = std::complex<double>;

/// Coefficients with modulus below this are dropped after every arithmetic
/// operation; it sits well below every verification tolerance in the suite.
inline constexpr double kCoeffPrune = 1e-15;

/// Default truncation degree for series-valued constructions.
inline constexpr int kDefaultDegree = 12;

/// Default numerical tolerance for verdicts (inner/outer/invertibility).
inline constexpr double kDefaultTol = 1e-9;

/// Default cap on finite-section columns; beyond it operations refuse to
/// materialize rather than thrash (see ResourceLimitError).
inline constexpr std::size_t kDefaultColumnCap = 500'000;

/// Thrown when a requested truncation would exceed the configured resource
/// caps (column counts, term counts). Maps to CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace fock
