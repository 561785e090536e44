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

#include "qbsat/qaoasim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qbsat/util.hpp"

namespace qbsat {

namespace {

void check_state(const Statevector& sv) {
  if (sv.n < 1 || sv.n > kMaxVars || sv.amps.size() != (std::size_t{1} << sv.n))
    throw Error("malformed statevector");
}

}  // namespace

Statevector init_plus_state(int n) {
  if (n < 1) throw Error("state needs at least one qubit");
  if (n > kMaxVars) throw CapError("state exceeds the supported qubit count");
  Statevector sv;
  sv.n = n;
  const std::size_t size = std::size_t{1} << n;
  sv.amps.assign(size, std::complex<double>(
                           1.0 / std::sqrt(static_cast<double>(size)), 0.0));
  return sv;
}

void apply_cost_layer(Statevector& sv, const std::vector<double>& energies,
                      double gamma) {
  check_state(sv);
  if (energies.size() != sv.amps.size())
    throw Error("energy table width does not match state");
  for (std::size_t x = 0; x < sv.amps.size(); ++x)
    sv.amps[x] *= std::polar(1.0, -gamma * energies[x]);
}

void apply_rx(Statevector& sv, int qubit, double theta) {
  check_state(sv);
  if (qubit < 0 || qubit >= sv.n) throw Error("qubit out of range");
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::complex<double> is(0.0, s);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t x = 0; x < sv.amps.size(); ++x) {
    if (x & bit) continue;
    const std::complex<double> a = sv.amps[x];
    const std::complex<double> b = sv.amps[x | bit];
    sv.amps[x] = c * a - is * b;
    sv.amps[x | bit] = c * b - is * a;
  }
}

void apply_mixer_layer(Statevector& sv, const Mixer& mixer, double beta,
                       MixerConvention convention) {
  check_state(sv);
  if (mixer.n != sv.n) throw Error("mixer width does not match state");
  const double scale = convention == MixerConvention::Gate ? 1.0 : 2.0;
  for (int j = 0; j < sv.n; ++j)
    apply_rx(sv, j, scale * mixer.omega[static_cast<std::size_t>(j)] * beta);
}

void apply_x(Statevector& sv, int qubit) {
  check_state(sv);
  if (qubit < 0 || qubit >= sv.n) throw Error("qubit out of range");
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t x = 0; x < sv.amps.size(); ++x)
    if ((x & bit) == 0) std::swap(sv.amps[x], sv.amps[x | bit]);
}

void apply_mcz(Statevector& sv, std::uint32_t qubits) {
  check_state(sv);
  if (qubits == 0) throw Error("MCZ must act on at least one qubit");
  if ((qubits >> sv.n) != 0) throw Error("qubit out of range");
  for (std::size_t x = 0; x < sv.amps.size(); ++x)
    if ((x & qubits) == qubits) sv.amps[x] = -sv.amps[x];
}

void apply_phase_circuit(Statevector& sv, const PhaseOracleCircuit& circ) {
  check_state(sv);
  if (circ.n_inputs != sv.n)
    throw Error("circuit width does not match state");
  for (const auto& gate : circ.gates) {
    if (gate.kind == PhaseGateKind::X)
      apply_x(sv, gate.target);
    else
      apply_mcz(sv, gate.qubits);
  }
  if (circ.phase_flips % 2 != 0)
    for (auto& amp : sv.amps) amp = -amp;
}

QaoaParams::QaoaParams(std::vector<double> g, std::vector<double> b)
    : gammas(std::move(g)), betas(std::move(b)) {
  if (gammas.size() != betas.size())
    throw Error("schedule needs one beta per gamma");
  for (double gamma : gammas)
    if (!(gamma >= 0.0 && gamma <= kGammaMax))
      throw Error("gamma out of [0, 2pi]");
  for (double beta : betas)
    if (!(beta >= 0.0 && beta <= kBetaMax)) throw Error("beta out of [0, pi]");
}

Statevector run_qaoa(const std::vector<double>& energies, const Mixer& mixer,
                     const QaoaParams& params, MixerConvention convention) {
  if (energies.size() != (std::size_t{1} << mixer.n))
    throw Error("energy table width does not match mixer");
  Statevector sv = init_plus_state(mixer.n);
  for (int j = 0; j < params.p(); ++j) {
    apply_cost_layer(sv, energies, params.gammas[static_cast<std::size_t>(j)]);
    apply_mixer_layer(sv, mixer, params.betas[static_cast<std::size_t>(j)],
                      convention);
  }
  return sv;
}

Statevector run_qaoa(const PauliZPolynomial& hc, const Mixer& mixer,
                     const QaoaParams& params, MixerConvention convention) {
  if (hc.n != mixer.n) throw Error("cost width does not match mixer");
  return run_qaoa(diag(hc), mixer, params, convention);
}

double expectation(const Statevector& sv,
                   const std::vector<double>& energies) {
  check_state(sv);
  if (energies.size() != sv.amps.size())
    throw Error("energy table width does not match state");
  double value = 0.0;
  for (std::size_t x = 0; x < sv.amps.size(); ++x)
    value += std::norm(sv.amps[x]) * energies[x];
  return value;
}

std::vector<double> probabilities(const Statevector& sv) {
  check_state(sv);
  std::vector<double> probs(sv.amps.size());
  for (std::size_t x = 0; x < sv.amps.size(); ++x)
    probs[x] = std::norm(sv.amps[x]);
  return probs;
}

std::vector<int> sample_counts(const Statevector& sv, int shots,
                               std::uint64_t seed) {
  check_state(sv);
  if (shots < 0) throw Error("shot count must be non-negative");
  std::vector<double> cdf = probabilities(sv);
  for (std::size_t x = 1; x < cdf.size(); ++x) cdf[x] += cdf[x - 1];
  std::mt19937_64 gen(seed);
  std::vector<int> counts(cdf.size(), 0);
  for (int s = 0; s < shots; ++s) {
    const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  return counts;
}

Histogram sample(const Statevector& sv, int shots, std::uint64_t seed) {
  const std::vector<int> counts = sample_counts(sv, shots, seed);
  Histogram hist;
  hist.shots = shots;
  for (std::size_t x = 0; x < counts.size(); ++x)
    if (counts[x] > 0)
      hist.counts.emplace(render_bitstring(static_cast<std::uint32_t>(x), sv.n),
                          counts[x]);
  return hist;
}

nlohmann::ordered_json histogram_json(const Histogram& hist) {
  nlohmann::ordered_json j;
  j["shots"] = hist.shots;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [bits, count] : hist.counts) counts[bits] = count;
  j["counts"] = std::move(counts);
  return j;
}

}  // namespace qbsat
