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

#include <json.hpp>

#include "fock/poly.hpp"

namespace fock {

/// Canonical interchange format, shared by every tool in this project:
///
///   {"n": 2, "terms": [{"word": [1,2], "re": 0.5, "im": 0.0}, ...]}
///
/// The empty word [] is the vacuum e_0. Serialization emits terms in
/// graded-lexicographic order with both parts of every coefficient, so equal
/// polynomials serialize to identical bytes. Parsing rejects letters outside
/// 1..n and repeated words.
inline nlohmann::json to_json(const FreePoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : p.terms()) {
    terms.push_back({{"word", w.letters_int()}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n", p.alphabet()}, {"terms", std::move(terms)}};
}

/// Series add the truncation degree and discarded-tail bound to the canonical
/// polynomial fields; parsers that only understand polynomials can ignore them.
inline nlohmann::json to_json(const TruncatedSeries& s) {
  nlohmann::json j = to_json(s.poly);
  j["trunc_degree"] = s.trunc_degree;
  j["tail_bound"] = s.tail_bound;
  return j;
}

inline FreePoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("polynomial JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("polynomial JSON needs an integer field \"n\"");
  const int n = j["n"].get<int>();
  if (n < 1 || n > 255) throw std::invalid_argument("alphabet size must be in 1..255");
  if (!j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("polynomial JSON needs an array field \"terms\"");

  FreePoly p(n);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("word") || !t["word"].is_array())
      throw std::invalid_argument("each term needs a \"word\" array");
    std::vector<int> letters;
    for (const auto& l : t["word"]) {
      if (!l.is_number_integer()) throw std::invalid_argument("word letters must be integers");
      int li = l.get<int>();
      if (li < 1 || li > n)
        throw std::invalid_argument("letter " + std::to_string(li) +
                                    " outside alphabet 1.." + std::to_string(n));
      letters.push_back(li);
    }
    double re = 0.0, im = 0.0;
    if (t.contains("re")) {
      if (!t["re"].is_number()) throw std::invalid_argument("\"re\" must be a number");
      re = t["re"].get<double>();
    }
    if (t.contains("im")) {
      if (!t["im"].is_number()) throw std::invalid_argument("\"im\" must be a number");
      im = t["im"].get<double>();
    }
    Word w(letters);
    if (p.terms().count(w) > 0)
      throw std::invalid_argument("duplicate word " + w.str() + " in term list");
    p.set_coeff(w, Complex(re, im));
  }
  return p;
}

/// Reads a series if the truncation fields are present, else wraps the
/// polynomial as exactly known.
inline TruncatedSeries series_from_json(const nlohmann::json& j) {
  FreePoly p = poly_from_json(j);
  if (j.contains("trunc_degree")) {
    if (!j["trunc_degree"].is_number_integer())
      throw std::invalid_argument("\"trunc_degree\" must be an integer");
    int d = j["trunc_degree"].get<int>();
    double tail = 0.0;
    if (j.contains("tail_bound")) {
      if (!j["tail_bound"].is_number()) throw std::invalid_argument("\"tail_bound\" must be a number");
      tail = j["tail_bound"].get<double>();
    }
    return TruncatedSeries(std::move(p), d, tail);
  }
  return TruncatedSeries::exact(std::move(p));
}

inline std::string serialize(const FreePoly& p) { return to_json(p).dump(); }
inline std::string serialize(const TruncatedSeries& s) { return to_json(s).dump(); }

/// Parses canonical JSON text; parse errors surface with byte positions.
inline FreePoly parse_poly(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return poly_from_json(j);
}

inline TruncatedSeries parse_series(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return series_from_json(j);
}

}  // namespace fock
