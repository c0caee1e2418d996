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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fock/catalog.hpp"
#include "fock/codim1.hpp"
#include "fock/factor.hpp"
#include "fock/io.hpp"
#include "fock/opnorm.hpp"
#include "fock/vncheck.hpp"

namespace fock::cli {

namespace detail {

inline double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" (whitespace ignored,
/// exponents allowed: "1e-3i").
inline Complex parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return Complex(to_double(s), 0.0);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    const char c = s[k];
    if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return Complex(0.0, 1.0);
    if (s == "-") return Complex(0.0, -1.0);
    return Complex(0.0, to_double(s));
  }
  const double re = to_double(s.substr(0, split));
  const std::string im = s.substr(split);
  if (im == "+") return Complex(re, 1.0);
  if (im == "-") return Complex(re, -1.0);
  return Complex(re, to_double(im));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

inline std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_complex(tok));
  if (out.empty()) throw std::invalid_argument("empty complex list");
  return out;
}

inline Word parse_word(const std::string& s) {
  std::vector<int> letters;
  for (const auto& tok : split(s, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad letter '" + tok + "'");
    }
    if (pos != tok.size()) throw std::invalid_argument("bad letter '" + tok + "'");
    letters.push_back(v);
  }
  return Word(letters);
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split(s, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + tok + "'");
    }
    if (pos != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

inline Lambda parse_lambda(const std::string& s) { return Lambda(parse_complex_list(s)); }

inline std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open input file '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
}

struct PolyInput {
  TruncatedSeries series = TruncatedSeries::exact(FreePoly(1));
  bool is_series = false;
};

inline PolyInput parse_poly_or_series(const std::string& text) {
  const nlohmann::json j = parse_json_text(text);
  PolyInput pi;
  if (j.is_object() && j.contains("trunc_degree")) {
    pi.series = series_from_json(j);
    pi.is_series = true;
  } else {
    pi.series = TruncatedSeries::exact(poly_from_json(j));
  }
  return pi;
}

inline std::vector<FreePoly> parse_poly_list(const std::string& text) {
  const nlohmann::json j = parse_json_text(text);
  std::vector<FreePoly> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(poly_from_json(e));
  } else {
    out.push_back(poly_from_json(j));
  }
  return out;
}

inline nlohmann::json complex_json(Complex c) {
  return nlohmann::json{{"re", c.real()}, {"im", c.imag()}};
}

inline nlohmann::json estimate_json(const NormEstimate& e) {
  return nlohmann::json{{"value", e.value},
                        {"interval", {e.lower, e.upper}},
                        {"converged", e.converged},
                        {"tail_heuristic", e.tail_heuristic},
                        {"iterations", e.iterations}};
}

inline void emit(std::ostream& out, const nlohmann::json& j, const std::string& format) {
  if (format == "pretty")
    out << j.dump(2) << "\n";
  else
    out << j.dump() << "\n";
}

/// All flag values in one bag; only the parsed subcommand's bindings are read.
struct Opts {
  std::string input = "-";
  std::string format = "json";
  int degree = kDefaultDegree;
  double tol = kDefaultTol;
  std::uint64_t seed = 0x5eedf0c4u;
  std::string lambda;
  std::string word;
  std::string mu;
  std::string coeffs;
  std::string which = "q";
  std::string divisor;
  std::string export_prefix;
  std::string dims = "2,4,8";
  int samples = 50;
  int letter = 0;
  int alphabet = 0;
};

inline IterationOptions make_iteration_options(const Opts& o) {
  IterationOptions opt;
  opt.seed = o.seed;
  return opt;
}

inline int resolve_alphabet(const Opts& o, const Word& f) {
  if (o.alphabet > 0) {
    if (f.max_letter() > o.alphabet)
      throw std::invalid_argument("word letters exceed the requested alphabet");
    return o.alphabet;
  }
  if (f.empty()) throw std::invalid_argument("cannot infer the alphabet from an empty word");
  return f.max_letter();
}

}  // namespace detail

/// Parses and executes one CLI invocation. Streams are injected so the whole
/// surface is testable in-process; the binary entry point forwards
/// std::cin/std::cout/std::cerr. Exit codes: 0 success, 2 invalid input or
/// violated precondition (including malformed JSON), 3 resource cap.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  using detail::Opts;
  Opts o;

  CLI::App app{"Fock-space multiplier toolkit: free polynomial arithmetic, "
               "multiplier-norm estimation, inner/outer analysis, and the "
               "codimension-one invariant subspace machinery.",
               "fock"};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* c) {
    c->add_option("--input", o.input, "input file with canonical JSON, or - for stdin");
    c->add_option("--format", o.format, "output layout")
        ->check(CLI::IsMember({"json", "pretty"}));
  };
  auto add_degree = [&](CLI::App* c) {
    c->add_option("-N,--degree", o.degree, "truncation degree");
  };
  auto add_tol = [&](CLI::App* c) { c->add_option("--tol", o.tol, "numeric tolerance"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed"); };

  // ---- norm ---------------------------------------------------------------
  auto* c_norm = app.add_subcommand(
      "norm", "estimate the left-multiplier norm by increasing finite sections");
  add_io(c_norm);
  add_degree(c_norm);
  add_tol(c_norm);
  add_seed(c_norm);
  c_norm->add_option("--export-section", o.export_prefix,
                     "write the final section as <prefix>.mtx plus <prefix>.words.json");
  c_norm->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const auto opt = detail::make_iteration_options(o);
    LinfEstimateResult r = linf_estimate(pi.series.poly, o.tol, o.degree, opt);
    NormEstimate est = r.estimate;
    if (pi.is_series && pi.series.tail_bound > 0.0) {
      est.upper = std::max(est.upper, est.value) + pi.series.tail_bound;
      est.tail_heuristic = true;
    }
    nlohmann::json j = detail::estimate_json(est);
    j["converged"] = est.converged && r.stabilized;
    j["stabilized"] = r.stabilized;
    j["degree"] = r.final_degree;
    j["history"] = r.history;
    j["l1_bound"] = l1_upper_bound(pi.series.poly) + pi.series.tail_bound;
    if (!o.export_prefix.empty()) {
      FiniteSection s = finite_section(pi.series.poly, r.final_degree, opt.max_columns);
      std::ofstream m(o.export_prefix + ".mtx");
      if (!m) throw std::invalid_argument("cannot write '" + o.export_prefix + ".mtx'");
      write_matrix_market(s, m);
      std::ofstream w(o.export_prefix + ".words.json");
      if (!w) throw std::invalid_argument("cannot write '" + o.export_prefix + ".words.json'");
      w << word_table_json(s).dump() << "\n";
    }
    detail::emit(out, j, o.format);
  });

  // ---- inner-check ----------------------------------------------------------
  auto* c_inner = app.add_subcommand("inner-check", "isometry test for left multiplication");
  add_io(c_inner);
  add_tol(c_inner);
  c_inner->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const InnerCheckResult r = pi.is_series ? is_inner(pi.series, o.tol)
                                            : is_inner(pi.series.poly, o.tol);
    detail::emit(out,
                 nlohmann::json{{"verdict", r.inner},
                                {"defect", r.defect},
                                {"norm_defect", r.norm_defect},
                                {"gram_defect", r.gram_defect},
                                {"tol", r.tol},
                                {"tail_allowance", r.tail_allowance}},
                 o.format);
  });

  // ---- outer-check ----------------------------------------------------------
  auto* c_outer = app.add_subcommand(
      "outer-check", "distance profile from the cyclic subspace to the vacuum");
  add_io(c_outer);
  add_degree(c_outer);
  add_tol(c_outer);
  c_outer->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const auto opt = detail::make_iteration_options(o);
    const std::vector<double> dist = outer_profile(pi.series.poly, o.degree, opt);
    detail::emit(out,
                 nlohmann::json{{"verdict", dist.back() <= o.tol},
                                {"final_distance", dist.back()},
                                {"distances", dist},
                                {"degree", o.degree},
                                {"tol", o.tol}},
                 o.format);
  });

  // ---- factor ---------------------------------------------------------------
  auto* c_factor = app.add_subcommand("factor", "inner-outer factorization at a truncation");
  add_io(c_factor);
  add_degree(c_factor);
  c_factor->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const auto opt = detail::make_iteration_options(o);
    const FactorizationResult r = inner_outer(pi.series.poly, o.degree, opt);
    detail::emit(out,
                 nlohmann::json{{"inner", to_json(r.inner)},
                                {"outer", to_json(r.outer)},
                                {"residual", r.residual},
                                {"degree", r.degree}},
                 o.format);
  });

  // ---- invert ---------------------------------------------------------------
  auto* c_invert = app.add_subcommand(
      "invert", "invertibility diagnostics and the formal inverse series");
  add_io(c_invert);
  add_degree(c_invert);
  add_tol(c_invert);
  add_seed(c_invert);
  c_invert->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const auto opt = detail::make_iteration_options(o);
    const InvertibilityReport r = invertibility_report(pi.series.poly, o.degree, o.tol,
                                                       1e-6, opt);
    nlohmann::json sig = nlohmann::json::array();
    for (std::size_t i = 0; i < r.sigma_profile.size(); ++i) {
      nlohmann::json e = detail::estimate_json(r.sigma_profile[i]);
      e["degree"] = r.sigma_degrees[i];
      sig.push_back(std::move(e));
    }
    const char* verdict = r.verdict == Invertibility::Invertible       ? "invertible"
                          : r.verdict == Invertibility::NotInvertible ? "not-invertible"
                                                                       : "inconclusive";
    nlohmann::json j{{"verdict", verdict},
                     {"reason", r.reason},
                     {"outer_distances", r.outer_dists},
                     {"sigma_profile", sig},
                     {"inverse_norms", r.inverse_norms}};
    if (std::abs(pi.series.poly.coeff(Word{})) > 0.0) {
      try {
        j["inverse"] =
            to_json(formal_inverse(pi.series.poly, o.degree, opt.max_columns, opt).inverse);
      } catch (const ResourceLimitError&) {
        j["inverse"] = nullptr;  // the diagnostics above already tell the story
      }
    } else {
      j["inverse"] = nullptr;
    }
    detail::emit(out, j, o.format);
  });

  // ---- divide ---------------------------------------------------------------
  auto* c_divide = app.add_subcommand("divide", "divide by an inner polynomial from the left");
  add_io(c_divide);
  add_degree(c_divide);
  add_tol(c_divide);
  c_divide->add_option("--divisor", o.divisor, "file with the inner divisor (canonical JSON)")
      ->required();
  c_divide->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const auto div = detail::parse_poly_or_series(detail::read_text(o.divisor, in));
    const DivisionResult r = inner_divide(pi.series, div.series, o.degree, o.tol);
    detail::emit(out,
                 nlohmann::json{{"verdict", r.divisible},
                                {"residual", r.residual},
                                {"quotient", to_json(r.quotient)},
                                {"quotient_inner", r.quotient_check.inner},
                                {"quotient_defect", r.quotient_check.defect}},
                 o.format);
  });

  // ---- wandering ------------------------------------------------------------
  auto* c_wander = app.add_subcommand(
      "wandering", "orthonormal wandering basis of the invariant subspace the "
                   "inputs generate (input: one polynomial or a JSON array)");
  add_io(c_wander);
  add_degree(c_wander);
  c_wander->callback([&] {
    const std::vector<FreePoly> gens =
        detail::parse_poly_list(detail::read_text(o.input, in));
    const auto opt = detail::make_iteration_options(o);
    const WanderingBasis r = wandering_basis(gens, o.degree, opt);
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : r.basis) basis.push_back(to_json(b));
    detail::emit(out,
                 nlohmann::json{{"dimension", r.basis.size()},
                                {"degree", r.degree},
                                {"gram_defect", r.gram_defect},
                                {"singular_values", r.singular_values},
                                {"basis", basis}},
                 o.format);
  });

  // ---- mobius ---------------------------------------------------------------
  auto* c_mobius = app.add_subcommand(
      "mobius", "substituted Moebius inner series (e_f - mu)(1 - conj(mu) e_f)^{-1}");
  add_degree(c_mobius);
  c_mobius->add_option("--word", o.word, "substituted word, comma-separated letters")
      ->required();
  c_mobius->add_option("--mu", o.mu, "complex parameter with |mu| < 1")->required();
  c_mobius->add_option("--n", o.alphabet, "alphabet size (default: largest letter)");
  c_mobius->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  c_mobius->callback([&] {
    const Word f = detail::parse_word(o.word);
    const int n = detail::resolve_alphabet(o, f);
    detail::emit(out, to_json(mobius(n, f, detail::parse_complex(o.mu), o.degree)), o.format);
  });

  // ---- zlambda --------------------------------------------------------------
  auto* c_z = app.add_subcommand("zlambda", "the defect vector spanning M_lambda^perp");
  add_degree(c_z);
  c_z->add_option("--lambda", o.lambda, "comma-separated complex entries, ||lambda|| < 1")
      ->required();
  c_z->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  c_z->callback([&] {
    detail::emit(out, to_json(z_lambda(detail::parse_lambda(o.lambda), o.degree)), o.format);
  });

  // ---- abelianize -----------------------------------------------------------
  auto* c_abel = app.add_subcommand(
      "abelianize", "evaluate the abelianization at a point of the open ball");
  add_io(c_abel);
  c_abel->add_option("--lambda", o.lambda, "comma-separated complex entries")->required();
  c_abel->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const Complex v = abelian_eval(pi.series.poly, detail::parse_lambda(o.lambda));
    nlohmann::json j = detail::complex_json(v);
    j["abs"] = std::abs(v);
    detail::emit(out, j, o.format);
  });

  // ---- ideal-check ----------------------------------------------------------
  auto* c_ideal = app.add_subcommand(
      "ideal-check", "membership in the closed commutator ideal (exact arithmetic)");
  add_io(c_ideal);
  c_ideal->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const IdealCheckResult r = in_commutator_ideal(pi.series.poly);
    detail::emit(out,
                 nlohmann::json{{"verdict", r.in_ideal}, {"max_collapse", r.max_collapse}},
                 o.format);
  });

  // ---- project --------------------------------------------------------------
  auto* c_proj = app.add_subcommand(
      "project", "orthogonal projection onto M_lambda (q) or its wandering part (p)");
  add_io(c_proj);
  add_degree(c_proj);
  c_proj->add_option("--which", o.which, "q or p")
      ->required()
      ->check(CLI::IsMember({"q", "p"}));
  c_proj->add_option("--lambda", o.lambda, "comma-separated complex entries")->required();
  c_proj->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const Lambda l = detail::parse_lambda(o.lambda);
    const TruncatedSeries r = (o.which == "q") ? q_lambda(pi.series.poly, l, o.degree)
                                               : p_lambda(pi.series.poly, l, o.degree);
    detail::emit(out, to_json(r), o.format);
  });

  // ---- wandering-lambda -------------------------------------------------------
  auto* c_wl = app.add_subcommand(
      "wandering-lambda", "the spanning wandering family of M_lambda");
  add_degree(c_wl);
  c_wl->add_option("--lambda", o.lambda, "comma-separated complex entries")->required();
  c_wl->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  c_wl->callback([&] {
    const auto fam = wandering_lambda(detail::parse_lambda(o.lambda), o.degree);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : fam) arr.push_back(to_json(s));
    detail::emit(out, nlohmann::json{{"count", fam.size()}, {"family", arr}}, o.format);
  });

  // ---- mlambda-contains -------------------------------------------------------
  auto* c_mc = app.add_subcommand(
      "mlambda-contains", "does the invariant subspace generated by the input "
                          "sit inside M_lambda?");
  add_io(c_mc);
  add_tol(c_mc);
  c_mc->add_option("--lambda", o.lambda, "comma-separated complex entries")->required();
  c_mc->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const Lambda l = detail::parse_lambda(o.lambda);
    const MembershipResult r = pi.is_series ? m_lambda_contains(pi.series, l, o.tol)
                                            : m_lambda_contains(pi.series.poly, l, o.tol);
    detail::emit(out,
                 nlohmann::json{{"verdict", r.contained},
                                {"pairing", detail::complex_json(r.pairing)},
                                {"uncertainty", r.uncertainty}},
                 o.format);
  });

  // ---- vn-test ----------------------------------------------------------------
  auto* c_vn = app.add_subcommand(
      "vn-test", "sample random row contractions and test the von Neumann bound");
  add_io(c_vn);
  add_seed(c_vn);
  add_tol(c_vn);
  c_vn->add_option("--samples", o.samples, "tuples per dimension");
  c_vn->add_option("--dims", o.dims, "comma-separated matrix dimensions");
  c_vn->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    const std::vector<int> dims = detail::parse_int_list(o.dims);
    const double tol = (o.tol == kDefaultTol) ? 1e-8 : o.tol;
    const VnReport r = vn_check(pi.series.poly, dims, o.samples, o.seed, tol);
    nlohmann::json per = nlohmann::json::array();
    for (const auto& st : r.per_dim)
      per.push_back(nlohmann::json{{"dim", st.dim},
                                   {"samples", st.samples},
                                   {"max", st.max_norm},
                                   {"mean", st.mean_norm}});
    detail::emit(out,
                 nlohmann::json{{"l1_bound", r.l1_bound},
                                {"l2_norm", r.l2_norm},
                                {"homogeneous", r.homogeneous},
                                {"bound", r.bound_used},
                                {"tol", r.tol},
                                {"violations", r.violations},
                                {"max_over_all", r.max_over_all},
                                {"per_dim", per}},
                 o.format);
  });

  // ---- catalog ------------------------------------------------------------------
  auto* c_cat = app.add_subcommand("catalog", "constructors for the example families");
  c_cat->require_subcommand(1);

  auto* cc_mono = c_cat->add_subcommand("monomial", "e_f for a word f");
  cc_mono->add_option("--word", o.word, "comma-separated letters (empty not allowed)")
      ->required();
  cc_mono->add_option("--n", o.alphabet, "alphabet size (default: largest letter)");
  cc_mono->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  cc_mono->callback([&] {
    const Word f = detail::parse_word(o.word);
    detail::emit(out, to_json(monomial(detail::resolve_alphabet(o, f), f)), o.format);
  });

  auto* cc_hom = c_cat->add_subcommand(
      "homogeneous", "normalized single-degree combination (always inner)");
  add_io(cc_hom);
  cc_hom->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    detail::emit(out, to_json(homogeneous_inner(pi.series.poly)), o.format);
  });

  auto* cc_dfl = c_cat->add_subcommand(
      "distinct-first-letter", "normalized combination with pairwise distinct "
                               "first letters (always inner)");
  add_io(cc_dfl);
  cc_dfl->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    detail::emit(out, to_json(distinct_first_letter(pi.series.poly)), o.format);
  });

  auto* cc_rl = c_cat->add_subcommand(
      "right-letter", "normalize and tensor with a letter the input avoids");
  add_io(cc_rl);
  cc_rl->add_option("--letter", o.letter, "the appended letter")->required();
  cc_rl->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    detail::emit(out, to_json(right_letter_inner(pi.series.poly, o.letter)), o.format);
  });

  auto* cc_inh = c_cat->add_subcommand(
      "inherited", "classical power series transplanted along a word");
  add_degree(cc_inh);
  cc_inh->add_option("--word", o.word, "substituted word")->required();
  cc_inh->add_option("--coeffs", o.coeffs, "comma-separated complex coefficients c_0,c_1,...")
      ->required();
  cc_inh->add_option("--n", o.alphabet, "alphabet size (default: largest letter)");
  cc_inh->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  cc_inh->callback([&] {
    const Word f = detail::parse_word(o.word);
    detail::emit(out,
                 to_json(inherited(detail::resolve_alphabet(o, f), f,
                                   detail::parse_complex_list(o.coeffs), o.degree)),
                 o.format);
  });

  auto* cc_mob = c_cat->add_subcommand("mobius", "same as the top-level mobius command");
  add_degree(cc_mob);
  cc_mob->add_option("--word", o.word, "substituted word")->required();
  cc_mob->add_option("--mu", o.mu, "complex parameter with |mu| < 1")->required();
  cc_mob->add_option("--n", o.alphabet, "alphabet size (default: largest letter)");
  cc_mob->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  cc_mob->callback([&] {
    const Word f = detail::parse_word(o.word);
    const int n = detail::resolve_alphabet(o, f);
    detail::emit(out, to_json(mobius(n, f, detail::parse_complex(o.mu), o.degree)), o.format);
  });

  auto* cc_h = c_cat->add_subcommand(
      "h-series", "the kernel-type series sum_k mu^k e_f^k");
  add_degree(cc_h);
  cc_h->add_option("--word", o.word, "substituted word")->required();
  cc_h->add_option("--mu", o.mu, "complex parameter with |mu| < 1")->required();
  cc_h->add_option("--n", o.alphabet, "alphabet size (default: largest letter)");
  cc_h->add_option("--format", o.format, "output layout")
      ->check(CLI::IsMember({"json", "pretty"}));
  cc_h->callback([&] {
    const Word f = detail::parse_word(o.word);
    const int n = detail::resolve_alphabet(o, f);
    detail::emit(out, to_json(h_series(n, f, detail::parse_complex(o.mu), o.degree)),
                 o.format);
  });

  auto* cc_exp = c_cat->add_subcommand(
      "exp", "exponential series of a polynomial (invertible, hence outer)");
  add_io(cc_exp);
  add_tol(cc_exp);
  cc_exp->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    detail::emit(out, to_json(exp_series(pi.series.poly, o.tol)), o.format);
  });

  auto* cc_geo = c_cat->add_subcommand(
      "geometric-inverse", "(e_0 - phi)^{-1} for l1(phi) < 1");
  add_io(cc_geo);
  add_degree(cc_geo);
  cc_geo->callback([&] {
    const auto pi = detail::parse_poly_or_series(detail::read_text(o.input, in));
    detail::emit(out, to_json(geometric_inverse(pi.series.poly, o.degree)), o.format);
  });

  // ---- parse and dispatch -------------------------------------------------------
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace fock::cli
