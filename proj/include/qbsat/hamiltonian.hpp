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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qbsat/circuit.hpp"

namespace qbsat {

// Exact dyadic rational num / 2^k, normalized so that num is odd or zero
// (and k = 0 when num = 0). The composition rules only ever produce
// power-of-two denominators, so this represents every coefficient exactly.
struct Dyadic {
  std::int64_t num = 0;
  int k = 0;

  static Dyadic make(std::int64_t num, int k);
  static Dyadic from_int(std::int64_t v) { return make(v, 0); }

  bool is_zero() const { return num == 0; }
  double to_double() const;
  std::string str() const;  // "-1/2", "3/8", "2", "0"

  Dyadic operator-() const { return Dyadic{-num, k}; }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  bool operator==(const Dyadic&) const = default;
};

// Real linear combination of Z-operator tensor products over n qubits.
// Keys are qubit-subset bitmasks; the empty subset is the identity term.
// Zero coefficients are never retained.
struct PauliZPolynomial {
  int n = 0;
  std::map<std::uint32_t, Dyadic> terms;

  void add_term(std::uint32_t mask, const Dyadic& coeff);
  void add(const PauliZPolynomial& other);  // widths must match
  bool operator==(const PauliZPolynomial&) const = default;
};

// Transverse-field mixer: one X term per qubit with coefficient omega.
struct Mixer {
  int n = 0;
  std::vector<double> omega;
};

// Boolean-gate composition: CX(q_j) -> I/2 - Z_j/2; MCX over Q ->
// 2^{-|Q|} prod_{j in Q} (I - Z_j). Eigenvalue at x equals AND of the
// controls. The gate must be an MCX (X gates have no H_f).
PauliZPolynomial compose_hf(const BooleanGate& gate, int n);

// Phase-gate composition: H_g = -H_f on the same qubit set; eigenvalue at
// x is -1 exactly when all of Q reads 1, else 0. MCZ of size >= 1 only.
PauliZPolynomial compose_hg(const PhaseGate& gate, int n);

// Multiplies each term's coefficient by (-1)^{|subset & flipped|}
// (X Z X = -Z applied per occurrence). Diagonal law:
// diag(x_conjugate(P, F))[x] = diag(P)[x ^ F].
PauliZPolynomial x_conjugate(const PauliZPolynomial& poly,
                             std::uint32_t flipped);

// Per-MCZ record kept by generate_hc: the plain composition and the
// composition conjugated by the X frame in force at that gate.
struct HgTraceEntry {
  std::uint32_t qubits = 0;
  std::uint32_t frame = 0;
  PauliZPolynomial raw;
  PauliZPolynomial conjugated;
};

// Walks the circuit left to right maintaining an X-parity frame; each MCZ
// contributes x_conjugate(compose_hg(gate), frame). Odd/even global phase
// flips add -phase_flips * I. Like terms are combined exactly.
PauliZPolynomial generate_hc(const PhaseOracleCircuit& circ,
                             std::vector<HgTraceEntry>* trace = nullptr);

// Dense eigenvalue vector: E(x) = sum over subsets of
// coeff * prod_{j in subset} (-1)^{x_j}, with Z|0> = +|0>.
std::vector<double> diag(const PauliZPolynomial& poly);

// Pauli-string rendering, qubit 0 rightmost; identity term first, then
// ascending subset mask.
std::vector<std::pair<std::string, double>> to_pauli_strings(
    const PauliZPolynomial& poly);

// Uniform per-qubit mixer; omega must be positive, n >= 1.
Mixer build_mixer(int n, double omega = 2.0);

// ["XI..I", ..., "I..IX"] with matching coefficients (highest qubit first,
// consistent with to_pauli_strings rendering).
std::vector<std::pair<std::string, double>> mixer_strings(const Mixer& m);

// {"paulis": [...], "coeffs": [...]}
nlohmann::ordered_json hamiltonian_json(
    const std::vector<std::pair<std::string, double>>& terms);

}  // namespace qbsat
