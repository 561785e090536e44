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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbsat/boolexpr.hpp"
#include "qbsat/circuit.hpp"
#include "qbsat/hamiltonian.hpp"
#include "qbsat/optimize.hpp"
#include "qbsat/qaoasim.hpp"
#include "qbsat/synth.hpp"
#include "qbsat/util.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qbsat;

constexpr int kExitParse = 2;
constexpr int kExitCompile = 3;
constexpr int kExitUnsat = 4;
constexpr int kExitBudget = 5;

struct CommonOpts {
  std::string input;
  bool cubes = false;
  std::vector<std::string> vars;
  std::string format = "json";
};

// The positional input is a file path when such a file exists, otherwise
// it is taken as inline text.
std::string load_input(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw Error("cannot read file: " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
      text.pop_back();
    return text;
  }
  return arg;
}

struct Problem {
  bool from_cubes = false;
  Formula formula;  // valid when !from_cubes
  EsopForm form;    // cubes as given when from_cubes
  std::vector<std::string> vars;
  int n = 0;
};

Problem load_problem(const CommonOpts& opts) {
  const std::string text = load_input(opts.input);
  Problem p;
  if (opts.cubes) {
    ParsedCubes pc = parse_cubes(text, opts.vars);
    p.from_cubes = true;
    p.form = std::move(pc.form);
    p.vars = std::move(pc.vars);
    p.n = p.form.n;
  } else {
    p.formula = parse(text, opts.vars);
    p.vars = p.formula.vars;
    p.n = p.formula.n();
  }
  return p;
}

TruthTable problem_truth_table(const Problem& p) {
  if (!p.from_cubes) return truth_table(p.formula);
  TruthTable tt;
  tt.n = p.form.n;
  tt.bits.resize(std::size_t{1} << p.form.n, 0);
  for (std::uint32_t x = 0; x < tt.bits.size(); ++x)
    tt.bits[x] = esop_evaluate(p.form, x) ? 1 : 0;
  return tt;
}

std::vector<std::string> cube_list(const EsopForm& form,
                                   const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  out.reserve(form.cubes.size());
  for (const Cube& cube : form.cubes) {
    EsopForm one;
    one.n = form.n;
    one.cubes.push_back(cube);
    out.push_back(format_cubes(one, vars));
  }
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  return lines;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

void print_report_table(const std::vector<StageCounts>& rows,
                        std::ostream& os) {
  os << "stage     qubits  ancillae  X   MCX              MCZ           "
        "mirror\n";
  for (const StageCounts& row : rows) {
    std::string mcx;
    for (const auto& [bits, count] : row.mcx) {
      if (!mcx.empty()) mcx += " ";
      mcx += std::to_string(bits) + "-bit:" + std::to_string(count);
    }
    std::string mcz;
    for (const auto& [size, count] : row.mcz) {
      if (!mcz.empty()) mcz += " ";
      mcz += std::to_string(size) + "-q:" + std::to_string(count);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-9s %-7d %-9d %-3d %-16s %-13s %s\n",
                  row.name.c_str(), row.inputs + row.ancillae, row.ancillae,
                  row.x, mcx.empty() ? "-" : mcx.c_str(),
                  mcz.empty() ? "-" : mcz.c_str(), row.mirror ? "yes" : "no");
    os << buf;
  }
}

// ---------------------------------------------------------------- parse --

int cmd_parse(const CommonOpts& opts) {
  const Problem p = load_problem(opts);
  const TruthTable tt = problem_truth_table(p);
  std::vector<std::string> minterms;
  for (std::uint32_t x = 0; x < tt.bits.size(); ++x)
    if (tt.bits[x]) minterms.push_back(render_bitstring(x, tt.n));

  if (opts.format == "json") {
    ordered_json j;
    if (p.from_cubes) {
      j["kind"] = "cubes";
      j["cubes"] = cube_list(p.form, p.vars);
      j["disjoint"] = check_disjoint(p.form);
    } else {
      j["kind"] = "formula";
      j["formula"] = unparse(p.formula);
    }
    j["vars"] = p.vars;
    j["n"] = p.n;
    j["minterm_count"] = minterms.size();
    j["minterms"] = minterms;
    emit(j);
    return 0;
  }
  if (p.from_cubes)
    std::cout << "cubes: " << join(cube_list(p.form, p.vars), " ^ ")
              << (check_disjoint(p.form) ? "  (disjoint)" : "  (overlapping)")
              << "\n";
  else
    std::cout << "formula: " << unparse(p.formula) << "\n";
  std::cout << "vars (" << p.n << "): " << join(p.vars, " ") << "\n";
  if (p.n == 0)
    std::cout << (minterms.empty() ? "constant false\n" : "constant true\n");
  else
    std::cout << "minterms (" << minterms.size()
              << "): " << join(minterms, " ") << "\n";
  return 0;
}

// -------------------------------------------------------------- compile --

int cmd_compile(const CommonOpts& opts, bool no_fallback) {
  const Problem p = load_problem(opts);

  std::vector<std::string> warnings;
  std::optional<BooleanOracleCircuit> boolean_oracle;
  if (!p.from_cubes) {
    try {
      boolean_oracle = build_boolean_oracle(p.formula);
    } catch (const UnsupportedStructureError& e) {
      if (no_fallback) throw;
      warnings.push_back(std::string("boolean oracle skipped: ") + e.what());
    }
  }

  EsopForm form;
  if (p.from_cubes) {
    form = p.form;
    if (!check_disjoint(form) && !form.cubes.empty())
      warnings.push_back(
          "input cubes overlap; the oracle computes their exclusive or");
  } else {
    form = dsop_synthesize(problem_truth_table(p));
  }
  const BooleanOracleCircuit esop_oracle = build_esop_oracle(form);
  const PhaseOracleCircuit phase = transform_to_phase(esop_oracle);

  std::vector<std::pair<std::string, StageCircuit>> stages;
  if (boolean_oracle) stages.emplace_back("boolean", &*boolean_oracle);
  stages.emplace_back("esop", &esop_oracle);
  stages.emplace_back("phase", &phase);
  const std::vector<StageCounts> rows = gate_report(stages);

  if (opts.format == "json") {
    ordered_json j;
    j["n"] = p.n;
    j["vars"] = p.vars;
    j["cubes"] = cube_list(form, p.vars);
    j["disjoint"] = form.cubes.empty() || check_disjoint(form);
    ordered_json circuits;
    if (boolean_oracle)
      circuits["boolean"] = split_lines(serialize(*boolean_oracle));
    circuits["esop"] = split_lines(serialize(esop_oracle));
    circuits["phase"] = split_lines(serialize(phase));
    j["circuits"] = std::move(circuits);
    j["gate_report"] = gate_report_json(rows);
    j["warnings"] = warnings;
    emit(j);
    return 0;
  }

  if (boolean_oracle)
    std::cout << "boolean oracle:\n" << serialize(*boolean_oracle) << "\n";
  std::cout << "cubes: " << join(cube_list(form, p.vars), " ^ ") << "\n";
  std::cout << "esop oracle:\n" << serialize(esop_oracle) << "\n";
  std::cout << "phase oracle:\n" << serialize(phase) << "\n";
  print_report_table(rows, std::cout);
  for (const std::string& w : warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

// ---------------------------------------------------------- hamiltonian --

int cmd_hamiltonian(const CommonOpts& opts, double omega) {
  const Problem p = load_problem(opts);

  std::vector<std::string> warnings;
  EsopForm form;
  if (p.from_cubes) {
    form = p.form;
    if (!check_disjoint(form) && !form.cubes.empty())
      warnings.push_back(
          "input cubes overlap; composed energies count multiplicities");
  } else {
    form = dsop_synthesize(problem_truth_table(p));
  }
  const PhaseOracleCircuit phase = transform_to_phase(build_esop_oracle(form));
  const PauliZPolynomial hc = generate_hc(phase);
  const Mixer mixer = build_mixer(std::max(p.n, 1), omega);

  const auto hc_terms = to_pauli_strings(hc);
  const auto hm_terms = mixer_strings(mixer);

  if (opts.format == "json") {
    ordered_json j;
    j["n"] = p.n;
    j["hc"] = hamiltonian_json(hc_terms);
    ordered_json exact = ordered_json::array();
    for (const auto& [mask, coeff] : hc.terms) {
      (void)mask;
      exact.push_back(coeff.str());
    }
    j["hc"]["coeffs_exact"] = std::move(exact);
    j["hm"] = hamiltonian_json(hm_terms);
    j["warnings"] = warnings;
    emit(j);
    return 0;
  }

  std::cout << "H_C (" << hc_terms.size() << " terms):\n";
  auto it = hc.terms.begin();
  for (const auto& [pauli, coeff] : hc_terms)
    std::cout << "  " << pauli << "  " << coeff << "  (" << (it++)->second.str()
              << ")\n";
  std::cout << "H_M (" << hm_terms.size() << " terms):\n";
  for (const auto& [pauli, coeff] : hm_terms)
    std::cout << "  " << pauli << "  " << coeff << "\n";
  for (const std::string& w : warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

// ---------------------------------------------------------------- solve --

int cmd_solve(const CommonOpts& opts, const SolveConfig& config) {
  const Problem p = load_problem(opts);
  const SolveReport rep = p.from_cubes ? solve(p.form, config, &p.vars)
                                       : solve(p.formula, config);

  if (opts.format == "json") {
    emit(solve_report_json(rep));
  } else {
    std::cout << "solutions (" << rep.solutions.size()
              << "): " << join({rep.solutions.begin(), rep.solutions.end()},
                               " ")
              << "\n";
    std::cout << "success probability: " << rep.success_probability << "\n";
    std::cout << "approximation ratio: " << rep.approximation_ratio << "\n";
    std::cout << "p: " << rep.p << "  nfev: " << rep.nfev
              << "  energy: " << rep.energy << "  seed: " << rep.seed << "\n";
    std::cout << "verified against brute force: "
              << (rep.verified_match ? "yes" : "no") << "\n";
    std::cout << "histogram (" << rep.histogram.shots << " shots):";
    for (const auto& [bits, count] : rep.histogram.counts)
      std::cout << " " << bits << ":" << count;
    std::cout << "\n";
    print_report_table(rep.stages, std::cout);
    for (const std::string& w : rep.warnings)
      std::cout << "warning: " << w << "\n";
  }
  return rep.simplex_incomplete ? kExitBudget : 0;
}

// --------------------------------------------------------------- verify --

int cmd_verify(const CommonOpts& opts) {
  const Problem p = load_problem(opts);
  const std::set<std::string> solutions =
      p.from_cubes ? brute_force_solutions(p.form)
                   : brute_force_solutions(p.formula);

  if (opts.format == "json") {
    ordered_json j;
    j["n"] = p.n;
    j["count"] = solutions.size();
    j["solutions"] = std::vector<std::string>(solutions.begin(),
                                              solutions.end());
    emit(j);
    return 0;
  }
  std::cout << "solutions (" << solutions.size()
            << "): " << join({solutions.begin(), solutions.end()}, " ")
            << "\n";
  return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("input", opts.input,
                  "Formula text, cube list (with --cubes), or a file path")
      ->required();
  cmd->add_flag("--cubes", opts.cubes, "Input uses the cube-list grammar");
  cmd->add_option("--vars", opts.vars,
                  "Comma-separated variable order (prepended to the order of "
                  "first appearance)")
      ->delimiter(',');
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qbsat: compiles Boolean formulas into phase oracles and QAOA "
      "Hamiltonians, then finds all satisfying assignments"};
  app.require_subcommand(1);

  CommonOpts parse_opts;
  CLI::App* parse_cmd =
      app.add_subcommand("parse", "Parse input and dump variables/minterms");
  add_common(parse_cmd, parse_opts);

  CommonOpts compile_opts;
  bool no_fallback = false;
  CLI::App* compile_cmd = app.add_subcommand(
      "compile", "Build Boolean/ESOP/phase oracles and the gate report");
  add_common(compile_cmd, compile_opts);
  compile_cmd->add_flag(
      "--no-fallback", no_fallback,
      "Fail (exit 3) when the structural Boolean oracle is unsupported "
      "instead of continuing with the synthesized form");

  CommonOpts ham_opts;
  double omega = 2.0;
  CLI::App* ham_cmd = app.add_subcommand(
      "hamiltonian", "Emit the cost and mixer Hamiltonians");
  add_common(ham_cmd, ham_opts);
  ham_cmd->add_option("--omega", omega, "Mixer coefficient")
      ->capture_default_str();

  CommonOpts solve_opts;
  SolveConfig config;
  int fixed_p = 0;
  std::string objective = "exact";
  std::string convention = "gate";
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "Run the full pipeline and report all satisfying assignments");
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_option("--p", fixed_p, "Fixed number of layers (no escalation)");
  solve_cmd->add_option("--max-p", config.max_p, "Deepest layer count tried")
      ->capture_default_str();
  solve_cmd->add_option("--shots", config.shots, "Measurement shots")
      ->capture_default_str();
  solve_cmd
      ->add_option("--budget", config.budget,
                   "Objective evaluations per restart")
      ->capture_default_str();
  solve_cmd->add_option("--restarts", config.restarts, "Optimizer restarts")
      ->capture_default_str();
  solve_cmd->add_option("--seed", config.seed, "Base random seed")
      ->capture_default_str();
  solve_cmd->add_option("--objective", objective, "Objective evaluation mode")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  solve_cmd
      ->add_option("--mixer-convention", convention,
                   "RX angle convention for the mixer layer")
      ->check(CLI::IsMember({"gate", "hamiltonian"}))
      ->capture_default_str();
  solve_cmd->add_option("--omega", config.omega, "Mixer coefficient")
      ->capture_default_str();

  CommonOpts verify_opts;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "List the brute-force satisfying assignments");
  add_common(verify_cmd, verify_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(parse_opts);
    if (compile_cmd->parsed()) return cmd_compile(compile_opts, no_fallback);
    if (ham_cmd->parsed()) return cmd_hamiltonian(ham_opts, omega);
    if (solve_cmd->parsed()) {
      if (fixed_p > 0) config.p = fixed_p;
      config.objective = objective == "exact" ? ObjectiveMode::Exact
                                              : ObjectiveMode::Sampled;
      config.mixer_convention = convention == "gate"
                                    ? MixerConvention::Gate
                                    : MixerConvention::Hamiltonian;
      return cmd_solve(solve_opts, config);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_opts);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnsupportedStructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompile;
  } catch (const TransformError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompile;
  } catch (const UnsatError& e) {
    std::cerr << "error: no solutions (" << e.what() << ")\n";
    return kExitUnsat;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
