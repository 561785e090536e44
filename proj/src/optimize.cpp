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

#include "qbsat/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "qbsat/util.hpp"

namespace qbsat {

Bounds qaoa_bounds(int p) {
  Bounds bounds;
  bounds.reserve(static_cast<std::size_t>(2 * p));
  for (int i = 0; i < p; ++i) bounds.emplace_back(0.0, kGammaMax);
  for (int i = 0; i < p; ++i) bounds.emplace_back(0.0, kBetaMax);
  return bounds;
}

namespace {

void clamp_into(const Bounds& bounds, std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::clamp(x[i], bounds[i].first, bounds[i].second);
}

}  // namespace

OptimizationResult nelder_mead(const Objective& objective,
                               const std::vector<double>& x0,
                               const Bounds& bounds,
                               const NmOptions& options) {
  const std::size_t d = x0.size();
  if (d == 0) throw Error("optimizer needs at least one coordinate");
  if (bounds.size() != d)
    throw Error("bounds do not match the parameter dimension");
  for (const auto& [lo, hi] : bounds)
    if (!(lo < hi)) throw Error("empty bound interval");
  if (options.budget < 1) throw Error("budget must be positive");

  OptimizationResult res;
  res.best_energy = std::numeric_limits<double>::infinity();

  int nfev = 0;
  auto eval = [&](const std::vector<double>& x) {
    const double v = objective(x);
    res.trace.emplace_back(x, v);
    ++nfev;
    if (v < res.best_energy) {
      res.best_energy = v;
      res.best_x = x;
    }
    return v;
  };
  auto guarded = [&](const std::vector<double>& x) -> std::optional<double> {
    if (nfev >= options.budget) return std::nullopt;
    return eval(x);
  };

  // Dimension-scaled coefficients (reflection / expansion / contraction /
  // shrink), which contract more cautiously as d grows.
  const double dd = static_cast<double>(d);
  const double refl = 1.0;
  const double expa = 1.0 + 2.0 / dd;
  const double ctra = 0.75 - 1.0 / (2.0 * dd);
  const double shrk = 1.0 - 1.0 / dd;

  // Initial simplex: x0 plus one vertex per coordinate, stepped by a
  // fraction of the bound range (stepping down when up would leave the box).
  std::vector<std::vector<double>> verts;
  std::vector<double> vals;
  verts.reserve(d + 1);
  {
    std::vector<double> v0 = x0;
    clamp_into(bounds, v0);
    verts.push_back(std::move(v0));
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> v = verts[0];
    const double step = options.init_step_frac *
                        (bounds[i].second - bounds[i].first);
    v[i] = (v[i] + step <= bounds[i].second) ? v[i] + step : v[i] - step;
    verts.push_back(std::move(v));
  }
  for (const auto& v : verts) {
    if (const auto f = guarded(v)) {
      vals.push_back(*f);
    } else {
      res.incomplete = true;
      res.nfev = nfev;
      return res;
    }
  }

  std::vector<std::size_t> order(d + 1);
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return vals[a] < vals[b];
                     });
    const std::size_t best = order[0];
    const std::size_t worst = order[d];
    const std::size_t second = order[d - 1];

    if (vals[worst] - vals[best] < options.tol) break;  // converged
    if (nfev >= options.budget) {
      res.incomplete = true;
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += verts[i][k];
    }
    for (double& c : centroid) c /= dd;

    auto affine = [&](double t, const std::vector<double>& far) {
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k)
        x[k] = centroid[k] + t * (far[k] - centroid[k]);
      clamp_into(bounds, x);
      return x;
    };
    auto replace_worst = [&](std::vector<double> x, double f) {
      verts[worst] = std::move(x);
      vals[worst] = f;
    };

    const std::vector<double> xr = affine(-refl, verts[worst]);
    const auto fr = guarded(xr);
    if (!fr) {
      res.incomplete = true;
      break;
    }

    if (*fr < vals[best]) {
      const std::vector<double> xe = affine(expa, xr);
      const auto fe = guarded(xe);
      if (!fe) {
        replace_worst(xr, *fr);
        res.incomplete = true;
        break;
      }
      if (*fe < *fr)
        replace_worst(xe, *fe);
      else
        replace_worst(xr, *fr);
      continue;
    }
    if (*fr < vals[second]) {
      replace_worst(xr, *fr);
      continue;
    }

    // Contraction, on whichever side of the centroid looks better.
    const bool outside = *fr < vals[worst];
    const std::vector<double> xc =
        outside ? affine(ctra, xr) : affine(ctra, verts[worst]);
    const auto fc = guarded(xc);
    if (!fc) {
      if (outside) replace_worst(xr, *fr);
      res.incomplete = true;
      break;
    }
    if (outside ? (*fc <= *fr) : (*fc < vals[worst])) {
      replace_worst(xc, *fc);
      continue;
    }

    // Shrink every vertex toward the best.
    bool exhausted = false;
    for (std::size_t i = 0; i <= d && !exhausted; ++i) {
      if (i == best) continue;
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k)
        x[k] = verts[best][k] + shrk * (verts[i][k] - verts[best][k]);
      clamp_into(bounds, x);
      if (const auto f = guarded(x)) {
        verts[i] = std::move(x);
        vals[i] = *f;
      } else {
        exhausted = true;
      }
    }
    if (exhausted) {
      res.incomplete = true;
      break;
    }
  }

  res.nfev = nfev;
  return res;
}

OptimizationResult minimize(const Objective& objective, int p,
                            const Bounds& bounds, int budget,
                            std::uint64_t seed, const NmOptions& options) {
  if (p < 1) throw Error("p must be at least 1");
  if (bounds.size() != static_cast<std::size_t>(2 * p))
    throw Error("bounds do not match the parameter dimension");
  if (budget < 2 * p + 2) throw Error("budget must be at least 2p+2");

  std::mt19937_64 gen(seed);
  std::vector<double> x0(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
    x0[i] = bounds[i].first + u * (bounds[i].second - bounds[i].first);
  }
  NmOptions opts = options;
  opts.budget = budget;
  return nelder_mead(objective, x0, bounds, opts);
}

Objective qaoa_objective(const std::vector<double>& hc_diag,
                         const Mixer& mixer, int p, const ObjectiveSpec& spec,
                         MixerConvention convention) {
  if (mixer.n < 1) throw Error("mixer needs at least one qubit");
  if (hc_diag.size() != (std::size_t{1} << mixer.n))
    throw Error("energy table width does not match mixer");
  if (p < 1) throw Error("p must be at least 1");
  if (spec.mode == ObjectiveMode::Sampled && spec.shots < 1)
    throw Error("sampled objective needs at least one shot");

  auto calls = std::make_shared<std::uint64_t>(0);
  return [hc_diag, mixer, p, spec, convention,
          calls](const std::vector<double>& x) -> double {
    if (x.size() != static_cast<std::size_t>(2 * p))
      throw Error("parameter vector must have length 2p");
    QaoaParams params(std::vector<double>(x.begin(), x.begin() + p),
                      std::vector<double>(x.begin() + p, x.end()));
    const Statevector sv = run_qaoa(hc_diag, mixer, params, convention);
    if (spec.mode == ObjectiveMode::Exact) return expectation(sv, hc_diag);
    const std::uint64_t shot_seed = derive_seed(spec.seed, (*calls)++);
    const std::vector<int> counts = sample_counts(sv, spec.shots, shot_seed);
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
      total += counts[i] * hc_diag[i];
    return total / spec.shots;
  };
}

std::set<std::string> brute_force_solutions(const Formula& f) {
  const TruthTable tt = truth_table(f);
  std::set<std::string> out;
  for (std::uint32_t x = 0; x < tt.bits.size(); ++x)
    if (tt.bits[x]) out.insert(render_bitstring(x, tt.n));
  return out;
}

std::set<std::string> brute_force_solutions(const EsopForm& form) {
  if (form.n > kMaxVars)
    throw CapError("form exceeds the supported variable count");
  std::set<std::string> out;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << form.n); ++x)
    if (esop_evaluate(form, x)) out.insert(render_bitstring(x, form.n));
  return out;
}

ExtractionResult extract_solutions(const Histogram& hist, int n,
                                   double alpha) {
  if (hist.shots < 1 || hist.counts.empty()) throw Error("empty histogram");
  if (n < 1 || n > kMaxVars) throw Error("bad width for extraction");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must be in (0, 1]");

  const double shots = static_cast<double>(hist.shots);
  double f_max = 0.0;
  for (const auto& [bits, count] : hist.counts)
    f_max = std::max(f_max, count / shots);
  const double floor = 1.5 / static_cast<double>(std::size_t{1} << n);

  ExtractionResult out;
  if (f_max < floor) {
    // Even the tallest peak is indistinguishable from uniform noise.
    out.no_concentration = true;
    for (const auto& [bits, count] : hist.counts) out.solutions.insert(bits);
    return out;
  }
  const double threshold = std::max(alpha * f_max, floor);
  for (const auto& [bits, count] : hist.counts)
    if (count / shots >= threshold) out.solutions.insert(bits);
  return out;
}

namespace {

std::vector<std::string> default_var_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

QaoaParams split_params(const std::vector<double>& x, int p) {
  return QaoaParams(std::vector<double>(x.begin(), x.begin() + p),
                    std::vector<double>(x.begin() + p, x.end()));
}

std::vector<double> ramp_start(int p) {
  std::vector<double> x(static_cast<std::size_t>(2 * p));
  for (int j = 0; j < p; ++j) {
    const double t = static_cast<double>(j + 1) / static_cast<double>(p + 1);
    x[static_cast<std::size_t>(j)] = 1.2 * t;
    x[static_cast<std::size_t>(p + j)] = 0.6 * (1.0 - t);
  }
  return x;
}

struct LevelOutcome {
  int p = 0;
  OptimizationResult winner;
  Histogram hist;
  ExtractionResult extraction;
  double success = 0.0;
  bool verified = false;
};

void check_config(const SolveConfig& config) {
  if (config.shots < 1) throw Error("shots must be positive");
  if (config.restarts < 1) throw Error("restarts must be positive");
  if (config.max_p < 1) throw Error("max p must be positive");
  if (config.p && *config.p < 1) throw Error("p must be at least 1");
  if (!(config.omega > 0.0)) throw Error("mixer weight must be positive");
  if (!(config.tol > 0.0)) throw Error("tolerance must be positive");
  if (!(config.success_target >= 0.0 && config.success_target <= 1.0))
    throw Error("success target must be in [0, 1]");
}

SolveReport solve_impl(const EsopForm& form,
                       const std::vector<std::string>& vars,
                       const std::set<std::string>& truth,
                       std::vector<std::string> warnings,
                       const SolveConfig& config) {
  check_config(config);
  const int n = form.n;

  const BooleanOracleCircuit oracle = build_esop_oracle(form);
  const PhaseOracleCircuit phase = transform_to_phase(oracle);
  const PauliZPolynomial hc = generate_hc(phase);
  const std::vector<double> energies = diag(hc);
  const Mixer mixer = build_mixer(n, config.omega);
  const double e_min = *std::min_element(energies.begin(), energies.end());

  std::vector<int> levels;
  if (config.p)
    levels.push_back(*config.p);
  else
    for (int p = 1; p <= config.max_p; ++p) levels.push_back(p);

  std::optional<LevelOutcome> best;
  int total_nfev = 0;

  for (const int p : levels) {
    if (config.budget < 2 * p + 2)
      throw Error("budget must be at least 2p+2");
    const std::uint64_t level_seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(p));
    const Bounds bounds = qaoa_bounds(p);

    std::optional<OptimizationResult> winner;
    for (int r = 0; r < config.restarts; ++r) {
      const std::uint64_t restart_seed =
          derive_seed(level_seed, static_cast<std::uint64_t>(r));
      ObjectiveSpec ospec;
      ospec.mode = config.objective;
      ospec.shots = config.shots;
      ospec.seed = derive_seed(restart_seed, 0x5a);
      const Objective objective =
          qaoa_objective(energies, mixer, p, ospec, config.mixer_convention);

      NmOptions opts;
      opts.budget = config.budget;
      opts.tol = config.tol;
      OptimizationResult res =
          (r == 0) ? nelder_mead(objective, ramp_start(p), bounds, opts)
                   : minimize(objective, p, bounds, config.budget,
                              restart_seed, opts);
      total_nfev += res.nfev;
      if (!winner || res.best_energy < winner->best_energy)
        winner = std::move(res);  // ties keep the earliest restart
    }

    LevelOutcome outcome;
    outcome.p = p;
    outcome.winner = std::move(*winner);
    const QaoaParams qp = split_params(outcome.winner.best_x, p);
    const Statevector sv =
        run_qaoa(energies, mixer, qp, config.mixer_convention);
    outcome.hist = sample(sv, config.shots, derive_seed(level_seed, 0x51));
    outcome.extraction = extract_solutions(outcome.hist, n, config.alpha);

    int hits = 0;
    for (const std::string& s : truth) {
      const auto it = outcome.hist.counts.find(s);
      if (it != outcome.hist.counts.end()) hits += it->second;
    }
    outcome.success = static_cast<double>(hits) / config.shots;
    outcome.verified = outcome.extraction.solutions == truth;

    const bool improves =
        !best || (outcome.verified && !best->verified) ||
        (outcome.verified == best->verified && outcome.success > best->success);
    if (improves) best = std::move(outcome);
    if (best->verified && best->success >= config.success_target) break;
  }

  SolveReport rep;
  rep.solutions = best->extraction.solutions;
  rep.success_probability = best->success;
  rep.approximation_ratio = best->winner.best_energy / e_min;
  rep.nfev = total_nfev;
  rep.p = best->p;
  rep.histogram = std::move(best->hist);
  rep.stages = gate_report({{"esop", &oracle}, {"phase", &phase}});
  rep.seed = config.seed;
  rep.verified_match = best->verified;
  rep.energy = best->winner.best_energy;
  rep.params = split_params(best->winner.best_x, best->p);
  for (const Cube& cube : form.cubes) {
    EsopForm one;
    one.n = form.n;
    one.cubes.push_back(cube);
    rep.dsop.push_back(format_cubes(one, vars));
  }
  rep.warnings = std::move(warnings);
  if (best->extraction.no_concentration)
    rep.warnings.push_back(
        "sampled distribution shows no concentration; every observed string "
        "was kept");
  if (!best->verified)
    rep.warnings.push_back(
        "extracted peaks do not match the brute-force solution set");
  rep.simplex_incomplete =
      best->winner.incomplete && best->winner.nfev < 2 * best->p + 1;
  if (rep.simplex_incomplete)
    rep.warnings.push_back(
        "optimizer budget was exhausted before the initial simplex "
        "completed");
  return rep;
}

}  // namespace

SolveReport solve(const Formula& f, const SolveConfig& config) {
  if (f.n() < 1) throw Error("solver needs at least one variable");
  const TruthTable tt = truth_table(f);
  const EsopForm form = dsop_synthesize(tt);
  if (form.cubes.empty()) throw UnsatError("formula has no solutions");
  return solve_impl(form, f.vars, brute_force_solutions(f), {}, config);
}

SolveReport solve(const EsopForm& form, const SolveConfig& config,
                  const std::vector<std::string>* var_names) {
  if (form.n < 1) throw Error("solver needs at least one variable");
  if (form.n > kMaxVars)
    throw CapError("form exceeds the supported variable count");
  const std::vector<std::string> vars =
      var_names ? *var_names : default_var_names(form.n);
  if (vars.size() != static_cast<std::size_t>(form.n))
    throw Error("variable names do not match the form width");

  const std::set<std::string> truth = brute_force_solutions(form);

  EsopForm used = form;
  std::vector<std::string> warnings;
  if (!check_disjoint(used)) {
    TruthTable tt;
    tt.n = form.n;
    tt.bits.resize(std::size_t{1} << form.n, 0);
    for (std::uint32_t x = 0; x < tt.bits.size(); ++x)
      tt.bits[x] = esop_evaluate(form, x) ? 1 : 0;
    used = dsop_synthesize(tt);
    warnings.push_back(
        "input cubes overlap; a disjoint cover was resynthesized");
  } else {
    used.disjoint = true;
  }
  if (used.cubes.empty()) throw UnsatError("formula has no solutions");
  return solve_impl(used, vars, truth, std::move(warnings), config);
}

nlohmann::ordered_json solve_report_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["solutions"] = nlohmann::ordered_json::array();
  for (const std::string& s : report.solutions) j["solutions"].push_back(s);
  j["success_probability"] = report.success_probability;
  j["approximation_ratio"] = report.approximation_ratio;
  j["nfev"] = report.nfev;
  j["p"] = report.p;
  j["histogram"] = histogram_json(report.histogram);
  j["gate_report"] = gate_report_json(report.stages);
  j["seed"] = report.seed;
  j["verified_match"] = report.verified_match;
  j["energy"] = report.energy;
  j["params"]["gammas"] = report.params.gammas;
  j["params"]["betas"] = report.params.betas;
  j["dsop"] = report.dsop;
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace qbsat
