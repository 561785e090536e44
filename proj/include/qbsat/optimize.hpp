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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qbsat/boolexpr.hpp"
#include "qbsat/circuit.hpp"
#include "qbsat/hamiltonian.hpp"
#include "qbsat/qaoasim.hpp"
#include "qbsat/synth.hpp"

namespace qbsat {

using Objective = std::function<double(const std::vector<double>&)>;
using Bounds = std::vector<std::pair<double, double>>;

// [lo, hi] per coordinate: gammas first (each [0, 2pi]), then betas
// (each [0, pi]).
Bounds qaoa_bounds(int p);

struct NmOptions {
  int budget = 500;
  double tol = 1e-10;           // simplex value-spread convergence threshold
  double init_step_frac = 0.5;  // initial simplex step as a bound-range fraction
};

struct OptimizationResult {
  std::vector<double> best_x;
  double best_energy = 0.0;
  int nfev = 0;
  bool incomplete = false;  // stopped by budget, not convergence
  std::vector<std::pair<std::vector<double>, double>> trace;  // every evaluation
};

// Nelder-Mead with adaptive (dimension-scaled) coefficients and clamp
// projection onto the bounds; fully deterministic for a given x0.
OptimizationResult nelder_mead(const Objective& objective,
                               const std::vector<double>& x0,
                               const Bounds& bounds, const NmOptions& options);

// Draws a uniform starting point from the bounds using `seed` and runs
// nelder_mead. budget must be at least 2p+2.
OptimizationResult minimize(const Objective& objective, int p,
                            const Bounds& bounds, int budget,
                            std::uint64_t seed, const NmOptions& options = {});

enum class ObjectiveMode { Exact, Sampled };

struct ObjectiveSpec {
  ObjectiveMode mode = ObjectiveMode::Exact;
  int shots = 1024;           // sampled mode only
  std::uint64_t seed = 0;     // sampled mode: base of the per-call stream
};

// params (gamma_1..gamma_p, beta_1..beta_p) -> <H_C>. Exact mode evaluates
// the statevector expectation; sampled mode estimates it from a fresh
// derived-seed shot batch on every call (so repeated calls see shot noise,
// deterministically).
Objective qaoa_objective(const std::vector<double>& hc_diag,
                         const Mixer& mixer, int p, const ObjectiveSpec& spec,
                         MixerConvention convention = MixerConvention::Gate);

// Exhaustive enumeration of satisfying assignments, rendered with qubit 0
// rightmost.
std::set<std::string> brute_force_solutions(const Formula& f);
std::set<std::string> brute_force_solutions(const EsopForm& form);

struct ExtractionResult {
  std::set<std::string> solutions;
  bool no_concentration = false;
};

// Returns every bitstring with empirical frequency >= max(alpha * f_max,
// 1.5 / 2^n). When even the tallest peak sits below the 1.5/2^n floor the
// histogram carries no signal: every observed string is returned and
// no_concentration is set. Throws on an empty histogram.
ExtractionResult extract_solutions(const Histogram& hist, int n,
                                   double alpha = 0.5);

struct SolveConfig {
  std::optional<int> p;    // fixed depth; otherwise escalate 1..max_p
  int max_p = 6;
  int shots = 1024;
  int budget = 500;        // evaluations per restart
  int restarts = 5;
  std::uint64_t seed = 0;
  ObjectiveMode objective = ObjectiveMode::Exact;
  MixerConvention mixer_convention = MixerConvention::Gate;
  double omega = 2.0;
  double alpha = 0.5;      // extraction threshold fraction
  double tol = 1e-6;       // per-restart convergence threshold
  double success_target = 0.7;
};

struct SolveReport {
  std::set<std::string> solutions;
  double success_probability = 0.0;
  double approximation_ratio = 0.0;
  int nfev = 0;            // cumulative over every restart and depth tried
  int p = 0;
  Histogram histogram;
  std::vector<StageCounts> stages;
  std::uint64_t seed = 0;

  bool verified_match = false;  // solutions == brute force
  double energy = 0.0;
  QaoaParams params;
  std::vector<std::string> dsop;  // cube-list rendering of the solved form
  std::vector<std::string> warnings;
  bool simplex_incomplete = false;  // winning restart never finished its simplex
};

nlohmann::ordered_json solve_report_json(const SolveReport& report);

// End-to-end pipeline: synthesize (unless already disjoint), build the
// ESOP oracle, transform to a phase oracle, compose H_C and the mixer,
// then optimize over (gamma, beta) with seeded restarts, escalating p
// until the sampled peaks reproduce the brute-force solution set with at
// least `success_target` of the shot mass. Throws UnsatError when the
// onset is empty.
SolveReport solve(const Formula& f, const SolveConfig& config = {});
SolveReport solve(const EsopForm& form, const SolveConfig& config = {},
                  const std::vector<std::string>* var_names = nullptr);

}  // namespace qbsat
