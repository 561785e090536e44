// Copyright 2026 The qbsat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct CliResult {
  int status = -1;
  std::string out;  // stdout and stderr merged
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QBSAT_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
    res.out.append(buf, got);
  const int raw = pclose(pipe);
  res.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return res;
}

json json_of(const CliResult& res) { return json::parse(res.out); }

}  // namespace

TEST_CASE("parse reports variables and minterms") {
  const CliResult res =
      run_cli("parse '(a | b | ~c) & (~a | c) & (~b | c)'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["kind"] == "formula");
  CHECK(j["formula"] == "(a | b | ~c) & (~a | c) & (~b | c)");
  CHECK(j["vars"] == json::array({"a", "b", "c"}));
  CHECK(j["n"] == 3);
  CHECK(j["minterm_count"] == 4);
  CHECK(j["minterms"] == json::array({"000", "101", "110", "111"}));
}

TEST_CASE("parse accepts cube lists and flags overlap") {
  const CliResult res = run_cli("parse --cubes '~a~b~c ^ a~bc ^ bc'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["kind"] == "cubes");
  CHECK(j["cubes"] == json::array({"~a~b~c", "a~bc", "bc"}));
  CHECK(j["disjoint"] == true);
  CHECK(j["minterms"] == json::array({"000", "101", "110", "111"}));

  const CliResult overlap = run_cli("parse --cubes 'ab~c ^ ~ac ^ ~bc'");
  REQUIRE(overlap.status == 0);
  CHECK(json_of(overlap)["disjoint"] == false);
}

TEST_CASE("parse respects an explicit variable order") {
  const CliResult res =
      run_cli("parse --cubes --vars a,b,c,d 'bd'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["vars"] == json::array({"a", "b", "c", "d"}));
  CHECK(j["n"] == 4);
  CHECK(j["minterm_count"] == 4);
}

TEST_CASE("parse reads input from a file") {
  const std::string path = "/tmp/qbsat_cli_input.txt";
  {
    std::ofstream out(path);
    out << "a ^ b\n";
  }
  const CliResult res = run_cli("parse " + path);
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["formula"] == "a ^ b");
  CHECK(j["minterms"] == json::array({"01", "10"}));
  std::remove(path.c_str());
}

TEST_CASE("parse failures exit with code 2") {
  const CliResult res = run_cli("parse 'a &'");
  CHECK(res.status == 2);
  CHECK(res.out.find("error:") != std::string::npos);

  CHECK(run_cli("parse '(a | b'").status == 2);
  CHECK(run_cli("parse --cubes 'a ^ ^ b'").status == 2);
}

TEST_CASE("compile emits all three stages for a structured formula") {
  const CliResult res =
      run_cli("compile '(a ^ b) & (a ^ c) & (b ^ d) & (c ^ d)'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["warnings"].empty());
  REQUIRE(j["circuits"].contains("boolean"));
  CHECK(j["gate_report"]["boolean"]["mcx"] == json{{"2", 16}, {"5", 1}});
  CHECK(j["gate_report"]["boolean"]["ancillae"] == 5);
  CHECK(j["gate_report"]["boolean"]["mirror"] == true);
  // Synthesized disjoint cover: two 4-literal cubes.
  CHECK(j["cubes"] == json::array({"~abc~d", "a~b~cd"}));
  CHECK(j["gate_report"]["phase"]["x"] == 8);
  CHECK(j["gate_report"]["phase"]["mcz"] == json{{"4", 2}});
  CHECK(j["gate_report"]["phase"]["ancillae"] == 0);
}

TEST_CASE("compile keeps overlapping cubes verbatim and warns") {
  const CliResult res = run_cli("compile --cubes 'ab~c ^ ~ac ^ ~bc'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["disjoint"] == false);
  REQUIRE(j["warnings"].size() == 1);
  CHECK(std::string(j["warnings"][0]).find("exclusive or") !=
        std::string::npos);
  CHECK_FALSE(j["circuits"].contains("boolean"));
  CHECK(j["gate_report"]["esop"]["x"] == 6);
  CHECK(j["gate_report"]["phase"]["mcz"] == json{{"2", 2}, {"3", 1}});
}

TEST_CASE("compile falls back to synthesis when the structure is unsupported") {
  const CliResult res = run_cli("compile 'a & (b | ~b)'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  REQUIRE(j["warnings"].size() == 1);
  CHECK(std::string(j["warnings"][0]).find("boolean oracle skipped") !=
        std::string::npos);
  CHECK_FALSE(j["circuits"].contains("boolean"));
  CHECK(j["cubes"] == json::array({"a"}));

  const CliResult strict = run_cli("compile --no-fallback 'a & (b | ~b)'");
  CHECK(strict.status == 3);
  CHECK(strict.out.find("error:") != std::string::npos);
}

TEST_CASE("compile serializes the phase circuit line by line") {
  const CliResult res = run_cli("compile --cubes '~a~b~c ^ a~bc ^ bc'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  const json expected = json::array(
      {"qubits 3 0", "x q0", "x q1", "x q2", "mcz q0 q1 q2", "x q0", "x q1",
       "x q2", "x q1", "mcz q0 q1 q2", "x q1", "mcz q1 q2"});
  CHECK(j["circuits"]["phase"] == expected);
}

TEST_CASE("hamiltonian emits exact dyadic coefficients") {
  const CliResult res = run_cli("hamiltonian --cubes '~a~b~c ^ a~bc ^ bc'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["n"] == 3);
  CHECK(j["hc"]["paulis"] ==
        json::array({"III", "ZII", "ZIZ", "ZZI", "ZZZ"}));
  CHECK(j["hc"]["coeffs"] == json::array({-0.5, 0.25, -0.25, -0.25, -0.25}));
  CHECK(j["hc"]["coeffs_exact"] ==
        json::array({"-1/2", "1/4", "-1/4", "-1/4", "-1/4"}));
  CHECK(j["hm"]["paulis"] == json::array({"XII", "IXI", "IIX"}));
  CHECK(j["hm"]["coeffs"] == json::array({2.0, 2.0, 2.0}));
  CHECK(j["warnings"].empty());
}

TEST_CASE("hamiltonian honours a custom mixer coefficient") {
  const CliResult res = run_cli("hamiltonian --omega 1.5 'a & b'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["hm"]["coeffs"] == json::array({1.5, 1.5}));
}

TEST_CASE("solve finds every satisfying assignment of the sop benchmark") {
  const CliResult res =
      run_cli("solve --seed 1 '(a & b & ~c) | (~a & c) | (~b & c)'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["solutions"] == json::array({"011", "100", "101", "110"}));
  CHECK(j["verified_match"] == true);
  CHECK(double(j["success_probability"]) >= 0.7);
  CHECK(j["histogram"]["shots"] == 1024);
  CHECK(j["dsop"] == json::array({"~ac", "ab~c", "a~bc"}));

  // Byte-identical reruns.
  const CliResult rerun =
      run_cli("solve --seed 1 '(a & b & ~c) | (~a & c) | (~b & c)'");
  CHECK(rerun.status == 0);
  CHECK(rerun.out == res.out);
}

TEST_CASE("solve honours solver flags") {
  const CliResult res =
      run_cli("solve --seed 3 --p 2 --shots 512 --restarts 2 'a & b'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["p"] == 2);
  CHECK(j["histogram"]["shots"] == 512);
  CHECK(j["seed"] == 3);
  CHECK(j["solutions"] == json::array({"11"}));
}

TEST_CASE("unsatisfiable problems exit with code 4") {
  const CliResult res = run_cli("solve 'a & ~a'");
  CHECK(res.status == 4);
  CHECK(res.out.find("error: no solutions") != std::string::npos);
}

TEST_CASE("verify lists brute-force assignments") {
  const CliResult res = run_cli(
      "verify --vars a0,a1,b0,b1 "
      "'((a0 ^ b0) | ((a0 & b0) ^ (a1 ^ b1))) & "
      "((a1 & b1) | ((a0 & b0) & (a1 ^ b1)))'");
  REQUIRE(res.status == 0);
  const json j = json_of(res);
  CHECK(j["n"] == 4);
  CHECK(j["count"] == 3);
  CHECK(j["solutions"] == json::array({"1011", "1110", "1111"}));

  const CliResult sudoku =
      run_cli("verify '(a ^ b) & (a ^ c) & (b ^ d) & (c ^ d)'");
  CHECK(json_of(sudoku)["solutions"] == json::array({"0110", "1001"}));
}

TEST_CASE("text format renders human-readable reports") {
  const CliResult parse_text =
      run_cli("parse --format text '(a | b | ~c) & (~a | c) & (~b | c)'");
  REQUIRE(parse_text.status == 0);
  CHECK(parse_text.out.find("vars (3): a b c") != std::string::npos);
  CHECK(parse_text.out.find("minterms (4): 000 101 110 111") !=
        std::string::npos);

  const CliResult compile_text =
      run_cli("compile --format text --cubes '~a~b~c ^ a~bc ^ bc'");
  REQUIRE(compile_text.status == 0);
  CHECK(compile_text.out.find("esop oracle:") != std::string::npos);
  CHECK(compile_text.out.find("mirror") != std::string::npos);

  const CliResult solve_text =
      run_cli("solve --format text --seed 1 'a & b'");
  REQUIRE(solve_text.status == 0);
  CHECK(solve_text.out.find("solutions (1): 11") != std::string::npos);
  CHECK(solve_text.out.find("verified against brute force: yes") !=
        std::string::npos);
}
