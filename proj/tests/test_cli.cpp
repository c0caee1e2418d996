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
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "fock/cli.hpp"
#include "helpers.hpp"

using namespace fock;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = cli::run(std::move(args), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string poly_json(const FreePoly& p) { return serialize(p); }

nlohmann::json parse_out(const CliRun& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

FreePoly shift(int alphabet, std::initializer_list<int> word) {
  FreePoly p(alphabet);
  p.set_coeff(Word(std::vector<int>(word)), Complex(1.0, 0.0));
  return p;
}

}  // namespace

TEST_CASE("cli norm certifies a monomial shift", "[cli]") {
  const CliRun r = run_cli({"norm", "--degree", "4"}, poly_json(shift(2, {1})));
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const nlohmann::json j = parse_out(r);
  CHECK_THAT(j["value"].get<double>(), WithinAbs(1.0, 1e-10));
  REQUIRE(j["interval"].size() == 2);
  const double lower = j["interval"][0].get<double>();
  const double upper = j["interval"][1].get<double>();
  CHECK(lower <= upper);
  CHECK(lower >= 1.0 - 1e-9);
  CHECK(upper <= 1.0 + 1e-9);
  CHECK(j["converged"].get<bool>());
  CHECK(j["stabilized"].get<bool>());
  CHECK(j["degree"].get<int>() <= 4);
  CHECK(!j["history"].empty());
  CHECK_THAT(j["l1_bound"].get<double>(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("cli norm output is byte-for-byte reproducible", "[cli]") {
  FreePoly p = shift(1, {}) + shift(1, {1});
  const std::string in = poly_json(p);
  const std::vector<std::string> args = {"norm", "--degree", "8",
                                         "--tol", "1e-6",   "--seed", "123"};
  const CliRun a = run_cli(args, in);
  const CliRun b = run_cli(args, in);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli inner-check separates inner from non-inner", "[cli]") {
  const CliRun mono = run_cli({"inner-check"}, poly_json(shift(2, {1, 2})));
  REQUIRE(mono.code == 0);
  const nlohmann::json jm = parse_out(mono);
  CHECK(jm["verdict"].get<bool>());
  CHECK(jm["defect"].get<double>() == 0.0);
  CHECK(jm["tail_allowance"].get<double>() == 0.0);

  FreePoly p = shift(1, {}) + shift(1, {1});
  p = normalized(p);
  const CliRun bad = run_cli({"inner-check"}, poly_json(p));
  REQUIRE(bad.code == 0);
  const nlohmann::json jb = parse_out(bad);
  CHECK_FALSE(jb["verdict"].get<bool>());
  CHECK_THAT(jb["defect"].get<double>(), WithinAbs(0.5, 1e-12));
  CHECK_THAT(jb["tol"].get<double>(), WithinAbs(1e-9, 1e-24));
}

TEST_CASE("cli malformed JSON exits 2 with a position diagnostic", "[cli]") {
  const CliRun r = run_cli({"norm"}, "{oops");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_THAT(r.err, ContainsSubstring("error: "));
  CHECK_THAT(r.err, ContainsSubstring("JSON parse error"));
}

TEST_CASE("cli precondition violations exit 2", "[cli]") {
  const CliRun ball = run_cli({"zlambda", "--lambda", "1.5,0", "--degree", "3"});
  CHECK(ball.code == 2);
  CHECK_THAT(ball.err, ContainsSubstring("unit ball"));

  const CliRun unknown = run_cli({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK_THAT(unknown.err, ContainsSubstring("error: "));

  const CliRun missing = run_cli({});
  CHECK(missing.code == 2);

  const CliRun format = run_cli({"norm", "--format", "yaml"}, poly_json(shift(1, {1})));
  CHECK(format.code == 2);

  const CliRun mu = run_cli({"mobius", "--word", "1", "--mu", "1.2"});
  CHECK(mu.code == 2);
  CHECK_THAT(mu.err, ContainsSubstring("error: "));

  const CliRun noword = run_cli({"catalog", "mobius", "--mu", "0.5"});
  CHECK(noword.code == 2);
}

TEST_CASE("cli resource caps exit 3", "[cli]") {
  // words_up_to(3, 13) = 2391484 exceeds the default column cap of 500000.
  const CliRun r = run_cli({"factor", "--degree", "13"}, poly_json(shift(3, {1})));
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK_THAT(r.err, ContainsSubstring("resource limit"));
}

TEST_CASE("cli help exits 0 and lists the surface", "[cli]") {
  const CliRun r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("norm"));
  CHECK_THAT(r.out, ContainsSubstring("catalog"));
  CHECK_THAT(r.out, ContainsSubstring("zlambda"));
}

TEST_CASE("cli zlambda emits the geometric defect vector", "[cli]") {
  const CliRun r = run_cli({"zlambda", "--lambda", "0.5,0", "--degree", "3"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = parse_out(r);
  CHECK(j["n"].get<int>() == 2);
  CHECK(j["trunc_degree"].get<int>() == 3);
  CHECK_THAT(j["tail_bound"].get<double>(),
             WithinAbs(0.0625 / std::sqrt(0.75), 1e-15));
  REQUIRE(j["terms"].size() == 4);
  const double expected[] = {1.0, 0.5, 0.25, 0.125};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(j["terms"][k]["word"].size() == k);
    CHECK_THAT(j["terms"][k]["re"].get<double>(), WithinAbs(expected[k], 1e-15));
    CHECK(j["terms"][k]["im"].get<double>() == 0.0);
    for (const auto& letter : j["terms"][k]["word"]) CHECK(letter.get<int>() == 1);
  }
}

TEST_CASE("cli mobius matches the closed form at both entry points", "[cli]") {
  const std::vector<std::string> args = {"catalog", "mobius", "--word", "1",
                                         "--mu",    "0.5",    "--degree", "3",
                                         "--n",     "1"};
  const CliRun r = run_cli(args);
  REQUIRE(r.code == 0);
  const nlohmann::json j = parse_out(r);
  CHECK(j["n"].get<int>() == 1);
  CHECK(j["trunc_degree"].get<int>() == 3);
  CHECK_THAT(j["tail_bound"].get<double>(),
             WithinAbs(0.125 * std::sqrt(0.75), 1e-15));
  REQUIRE(j["terms"].size() == 4);
  const double expected[] = {-0.5, 0.75, 0.375, 0.1875};
  for (std::size_t k = 0; k < 4; ++k)
    CHECK_THAT(j["terms"][k]["re"].get<double>(), WithinAbs(expected[k], 1e-15));

  const CliRun top = run_cli({"mobius", "--word", "1", "--mu", "0.5",
                              "--degree", "3", "--n", "1"});
  REQUIRE(top.code == 0);
  CHECK(top.out == r.out);  // the catalog alias is the same command
}

TEST_CASE("cli divide recovers a monomial quotient", "[cli]") {
  const auto divisor_path = temp_file("fock_cli_divisor.json");
  write_file(divisor_path, poly_json(shift(2, {1})));
  const CliRun r = run_cli({"divide", "--divisor", divisor_path.string(),
                            "--degree", "6"},
                           poly_json(shift(2, {1, 2})));
  std::filesystem::remove(divisor_path);
  REQUIRE(r.code == 0);
  const nlohmann::json j = parse_out(r);
  CHECK(j["verdict"].get<bool>());
  CHECK(j["residual"].get<double>() <= 1e-12);
  CHECK(j["quotient_inner"].get<bool>());
  CHECK(j["quotient_defect"].get<double>() <= 1e-12);
  REQUIRE(j["quotient"]["terms"].size() == 1);
  CHECK(j["quotient"]["terms"][0]["word"] == nlohmann::json::array({2}));
  CHECK_THAT(j["quotient"]["terms"][0]["re"].get<double>(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("cli reads --input files and honours --format pretty", "[cli]") {
  const auto input_path = temp_file("fock_cli_input.json");
  FreePoly p = normalized(shift(1, {}) + shift(1, {1}));
  write_file(input_path, poly_json(p));
  const CliRun r = run_cli({"inner-check", "--input", input_path.string(),
                            "--format", "pretty"});
  std::filesystem::remove(input_path);
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("\n  \""));  // two-space indentation
  const nlohmann::json j = parse_out(r);
  CHECK_FALSE(j["verdict"].get<bool>());
}

TEST_CASE("cli vn-test reports zero violations for a homogeneous row", "[cli]") {
  FreePoly p = normalized(shift(2, {1}) + shift(2, {2}));
  const CliRun r = run_cli({"vn-test", "--dims", "2", "--samples", "5",
                            "--seed", "11"},
                           poly_json(p));
  REQUIRE(r.code == 0);
  const nlohmann::json j = parse_out(r);
  CHECK(j["violations"].get<int>() == 0);
  CHECK(j["homogeneous"].get<bool>());
  CHECK_THAT(j["bound"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(j["tol"].get<double>(), WithinAbs(1e-8, 1e-23));
  CHECK(j["max_over_all"].get<double>() <= 1.0 + 1e-8);
  REQUIRE(j["per_dim"].size() == 1);
  CHECK(j["per_dim"][0]["dim"].get<int>() == 2);
  CHECK(j["per_dim"][0]["samples"].get<int>() == 5);
  CHECK(j["per_dim"][0]["max"].get<double>() <= 1.0 + 1e-8);
}

TEST_CASE("cli outer-check and invert agree on a geometric example", "[cli]") {
  FreePoly p = shift(1, {}) - 0.5 * shift(1, {1});
  const CliRun oc = run_cli({"outer-check", "--degree", "10", "--tol", "1e-2"},
                            poly_json(p));
  REQUIRE(oc.code == 0);
  const nlohmann::json jo = parse_out(oc);
  CHECK(jo["verdict"].get<bool>());
  CHECK(jo["final_distance"].get<double>() <= 1e-2);
  CHECK(jo["distances"].size() == 11);

  const CliRun inv = run_cli({"invert", "--degree", "8", "--tol", "1e-2"},
                             poly_json(p));
  REQUIRE(inv.code == 0);
  const nlohmann::json ji = parse_out(inv);
  CHECK(ji["verdict"].get<std::string>() == "invertible");
  CHECK_THAT(ji["reason"].get<std::string>(), ContainsSubstring("within tolerance"));
  REQUIRE(!ji["inverse"].is_null());
  REQUIRE(ji["inverse"]["terms"].size() == 9);
  CHECK_THAT(ji["inverse"]["terms"][3]["re"].get<double>(), WithinAbs(0.125, 1e-12));
}

TEST_CASE("cli codimension-one commands compose", "[cli]") {
  FreePoly comm = shift(2, {1, 2}) - shift(2, {2, 1});
  const CliRun ideal = run_cli({"ideal-check"}, poly_json(comm));
  REQUIRE(ideal.code == 0);
  CHECK(parse_out(ideal)["verdict"].get<bool>());

  const CliRun member = run_cli({"mlambda-contains", "--lambda", "0.3,0.1"},
                                poly_json(comm));
  REQUIRE(member.code == 0);
  const nlohmann::json jm = parse_out(member);
  CHECK(jm["verdict"].get<bool>());
  CHECK_THAT(jm["pairing"]["re"].get<double>(), WithinAbs(0.0, 1e-15));

  const CliRun wl = run_cli({"wandering-lambda", "--lambda", "0,0",
                             "--degree", "4"});
  REQUIRE(wl.code == 0);
  CHECK(parse_out(wl)["count"].get<int>() == 2);

  const CliRun proj = run_cli({"project", "--which", "q", "--lambda", "0.5,0",
                               "--degree", "4"},
                              poly_json(shift(2, {})));
  REQUIRE(proj.code == 0);
  const nlohmann::json jp = parse_out(proj);
  CHECK(jp["trunc_degree"].get<int>() == 4);
  REQUIRE(jp["terms"].size() == 5);
  CHECK_THAT(jp["terms"][0]["re"].get<double>(), WithinAbs(0.25, 1e-15));
  CHECK_THAT(jp["terms"][1]["re"].get<double>(), WithinAbs(-0.375, 1e-15));

  const CliRun abel = run_cli({"abelianize", "--lambda", "0.5,0.5"},
                              poly_json(shift(2, {1, 2})));
  REQUIRE(abel.code == 0);
  const nlohmann::json ja = parse_out(abel);
  CHECK_THAT(ja["re"].get<double>(), WithinAbs(0.25, 1e-15));
  CHECK_THAT(ja["abs"].get<double>(), WithinAbs(0.25, 1e-15));
}

TEST_CASE("cli wandering and catalog generators round out the surface", "[cli]") {
  const std::string gens =
      "[" + poly_json(shift(1, {1})) + "," + poly_json(shift(1, {1, 1})) + "]";
  const CliRun w = run_cli({"wandering", "--degree", "5"}, gens);
  REQUIRE(w.code == 0);
  const nlohmann::json jw = parse_out(w);
  CHECK(jw["dimension"].get<int>() == 1);
  CHECK(jw["gram_defect"].get<double>() <= 1e-12);

  const CliRun mono = run_cli({"catalog", "monomial", "--word", "1,2"});
  REQUIRE(mono.code == 0);
  const nlohmann::json jm = parse_out(mono);
  CHECK(jm["n"].get<int>() == 2);  // alphabet inferred from the largest letter
  CHECK(!jm.contains("trunc_degree"));
  REQUIRE(jm["terms"].size() == 1);
  CHECK(jm["terms"][0]["word"] == nlohmann::json::array({1, 2}));

  const CliRun h = run_cli({"catalog", "h-series", "--word", "1", "--mu", "0.5",
                            "--degree", "2"});
  REQUIRE(h.code == 0);
  const nlohmann::json jh = parse_out(h);
  REQUIRE(jh["terms"].size() == 3);
  CHECK_THAT(jh["terms"][2]["re"].get<double>(), WithinAbs(0.25, 1e-15));
  CHECK_THAT(jh["tail_bound"].get<double>(),
             WithinAbs(0.125 / std::sqrt(0.75), 1e-15));

  const CliRun inh = run_cli({"catalog", "inherited", "--word", "1", "--coeffs",
                              "1,0.5,0.25", "--degree", "5", "--n", "1"});
  REQUIRE(inh.code == 0);
  const nlohmann::json jc = parse_out(inh);
  REQUIRE(jc["terms"].size() == 3);
  CHECK(jc["tail_bound"].get<double>() == 0.0);
}

TEST_CASE("cli norm exports the final section", "[cli]") {
  const auto prefix = temp_file("fock_cli_section").string();
  const CliRun r = run_cli({"norm", "--degree", "2", "--export-section", prefix},
                           poly_json(shift(1, {1})));
  REQUIRE(r.code == 0);
  const std::string mtx = slurp(prefix + ".mtx");
  CHECK(mtx.rfind("%%MatrixMarket", 0) == 0);
  const nlohmann::json words = nlohmann::json::parse(slurp(prefix + ".words.json"));
  CHECK(words["n"].get<int>() == 1);
  std::filesystem::remove(prefix + ".mtx");
  std::filesystem::remove(prefix + ".words.json");
}

TEST_CASE("cli binary matches the in-process surface", "[cli]") {
  const std::string binary = FOCK_CLI_PATH;
  const auto out_path = temp_file("fock_cli_smoke_out.txt");
  const auto err_path = temp_file("fock_cli_smoke_err.txt");

  const std::string ok_cmd = "\"" + binary +
                             "\" zlambda --lambda 0.5,0 --degree 3 > \"" +
                             out_path.string() + "\" 2> \"" + err_path.string() + "\"";
  const int ok_rc = std::system(ok_cmd.c_str());
  REQUIRE(ok_rc != -1);
  REQUIRE(WIFEXITED(ok_rc));
  CHECK(WEXITSTATUS(ok_rc) == 0);
  const CliRun in_process = run_cli({"zlambda", "--lambda", "0.5,0", "--degree", "3"});
  CHECK(slurp(out_path) == in_process.out);

  const std::string bad_cmd = "\"" + binary +
                              "\" zlambda --lambda 1.5,0 > \"" + out_path.string() +
                              "\" 2> \"" + err_path.string() + "\"";
  const int bad_rc = std::system(bad_cmd.c_str());
  REQUIRE(bad_rc != -1);
  REQUIRE(WIFEXITED(bad_rc));
  CHECK(WEXITSTATUS(bad_rc) == 2);
  CHECK_THAT(slurp(err_path), ContainsSubstring("unit ball"));

  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
}
