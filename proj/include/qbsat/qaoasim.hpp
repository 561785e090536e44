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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbsat/circuit.hpp"
#include "qbsat/hamiltonian.hpp"

namespace qbsat {

// Dense statevector over n qubits; amps[x] is the amplitude of basis
// state |x> with qubit j at bit j of x.
struct Statevector {
  int n = 0;
  std::vector<std::complex<double>> amps;
};

// How a mixer angle beta maps onto the RX rotation angle:
//   Gate:        theta = omega * beta      (RX(omega beta) per qubit)
//   Hamiltonian: theta = 2 * omega * beta  (exp(-i beta omega X) per qubit)
enum class MixerConvention { Gate, Hamiltonian };

// |+>^n, 1 <= n <= kMaxVars.
Statevector init_plus_state(int n);

// amps[x] *= exp(-i gamma E(x)); energies must have 2^n entries.
void apply_cost_layer(Statevector& sv, const std::vector<double>& energies,
                      double gamma);

// One RX per qubit with the angle fixed by the convention above.
void apply_mixer_layer(Statevector& sv, const Mixer& mixer, double beta,
                       MixerConvention convention = MixerConvention::Gate);

// Elementary gates, used directly by round-trip checks.
void apply_rx(Statevector& sv, int qubit, double theta);
void apply_x(Statevector& sv, int qubit);
void apply_mcz(Statevector& sv, std::uint32_t qubits);

// Runs every gate of a phase-oracle circuit, including the global sign
// from phase_flips, so the result is exactly (-1)^{g(x)} per basis state.
void apply_phase_circuit(Statevector& sv, const PhaseOracleCircuit& circ);

// Layer schedule (gamma_1..gamma_p, beta_1..beta_p). Construction
// validates gamma in [0, 2pi] and beta in [0, pi]; p = 0 (empty schedule)
// is permitted and leaves the plus state untouched.
struct QaoaParams {
  QaoaParams() = default;
  QaoaParams(std::vector<double> gammas, std::vector<double> betas);

  int p() const { return static_cast<int>(gammas.size()); }

  std::vector<double> gammas;
  std::vector<double> betas;
};

inline constexpr double kGammaMax = 6.283185307179586476925286766559;
inline constexpr double kBetaMax = 3.1415926535897932384626433832795;

// H^n |0> followed by p alternating cost/mixer layers.
Statevector run_qaoa(const std::vector<double>& energies, const Mixer& mixer,
                     const QaoaParams& params,
                     MixerConvention convention = MixerConvention::Gate);
Statevector run_qaoa(const PauliZPolynomial& hc, const Mixer& mixer,
                     const QaoaParams& params,
                     MixerConvention convention = MixerConvention::Gate);

// <psi| diag(energies) |psi>.
double expectation(const Statevector& sv, const std::vector<double>& energies);

// |amps[x]|^2 for every basis state.
std::vector<double> probabilities(const Statevector& sv);

struct Histogram {
  int shots = 0;
  std::map<std::string, int> counts;  // bitstring -> occurrences, zeros omitted
};

// Inverse-CDF sampling with a dedicated mt19937_64 stream.
std::vector<int> sample_counts(const Statevector& sv, int shots,
                               std::uint64_t seed);
Histogram sample(const Statevector& sv, int shots, std::uint64_t seed);

// {"shots": N, "counts": {"010": 17, ...}} with keys in ascending order.
nlohmann::ordered_json histogram_json(const Histogram& hist);

}  // namespace qbsat
