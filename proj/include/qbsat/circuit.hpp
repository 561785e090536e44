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
#include <variant>
#include <vector>

#include "json.hpp"
#include "qbsat/boolexpr.hpp"
#include "qbsat/synth.hpp"

namespace qbsat {

// X (empty controls) or multi-controlled X. Controls are stored sorted
// ascending and never contain the target.
struct BooleanGate {
  std::vector<int> controls;
  int target = 0;
  bool is_x() const { return controls.empty(); }
};

// Reversible circuit computing f(x) into the last ancilla (the fqubit).
// Qubit layout: inputs 0..n_inputs-1, ancillae after, fqubit last.
struct BooleanOracleCircuit {
  int n_inputs = 0;
  int n_ancilla = 0;  // includes the fqubit
  bool mirrored = false;
  std::vector<BooleanGate> gates;

  int width() const { return n_inputs + n_ancilla; }
  int fqubit() const { return width() - 1; }
};

enum class PhaseGateKind { X, MCZ };

// X on `target`, or a multi-controlled Z over the qubit set `qubits`
// (Z-type gates are symmetric, so the set is unordered; the mask is the
// canonical form). MCZ of size 1 is Pauli-Z, size 2 is CZ.
struct PhaseGate {
  PhaseGateKind kind = PhaseGateKind::X;
  int target = -1;          // X
  std::uint32_t qubits = 0; // MCZ, non-empty
};

// Ancilla-free circuit imparting phase (-1)^{f(x)} to |x>. `phase_flips`
// counts unconditioned flips of f (one per constant-1 term); odd parity
// contributes a global -1.
struct PhaseOracleCircuit {
  int n_inputs = 0;
  int phase_flips = 0;
  std::vector<PhaseGate> gates;
};

// One cube after another onto a single ancilla: X on negated-literal
// qubits, MCX(cube qubits -> fqubit), the same X gates again. A constant-1
// cube becomes a bare X(fqubit). No mirror is needed.
BooleanOracleCircuit build_esop_oracle(const EsopForm& form);

// Structural builder: computes every non-literal subterm into its own
// ancilla (identical subterms shared), combines the root into the fqubit,
// then uncomputes the subterm ancillae in reverse (the mirror). AND maps
// to a multi-controlled X, OR goes through De Morgan (X-conjugated MCX
// plus an output X), XOR is a CX chain.
//
// Throws UnsupportedStructureError for shapes the builder cannot realize
// (constants below the root; a clause using one variable in both
// polarities); callers should then route through dsop_synthesize.
BooleanOracleCircuit build_boolean_oracle(const Formula& f);

struct SimulationResult {
  int fqubit = 0;
  std::vector<int> ancilla_residue;  // every ancilla except the fqubit
};

// Deterministic classical propagation of X/MCX gates from |x>|0...0>.
SimulationResult classical_simulate(const BooleanOracleCircuit& circ,
                                    std::uint32_t x);

// Applies the generalized transformation rules: CX(q -> fqubit) becomes
// Z(q), MCX(Q -> fqubit) becomes MCZ(Q), X gates on inputs are kept in
// place, X(fqubit) becomes a counted global phase flip, and the fqubit is
// deleted. Requires exactly one ancilla and every MCX targeting it;
// violations raise TransformError naming the offending gate.
PhaseOracleCircuit transform_to_phase(const BooleanOracleCircuit& circ);

// Walks the gate list keeping an X-flip frame per qubit; each MCZ
// contributes -1 iff all its qubits read 1 under the frame. Returns +1/-1.
int phase_of(const PhaseOracleCircuit& circ, std::uint32_t x);

// Exact per-stage gate tallies. `mcx` counts multi-controlled X by total
// bits (CX = 2, Toffoli = 3, ...); `mcz` counts MCZ by qubit-set size
// (Z = 1, CZ = 2, CCZ = 3, ...).
struct StageCounts {
  std::string name;
  int inputs = 0;
  int ancillae = 0;
  int x = 0;
  std::map<int, int> mcx;
  std::map<int, int> mcz;
  bool mirror = false;
};

using StageCircuit =
    std::variant<const BooleanOracleCircuit*, const PhaseOracleCircuit*>;

std::vector<StageCounts> gate_report(
    const std::vector<std::pair<std::string, StageCircuit>>& stages);

// JSON object keyed by stage name.
nlohmann::ordered_json gate_report_json(const std::vector<StageCounts>& rows);

// Line-oriented serialization: header "qubits <n_inputs> <n_ancilla>",
// then one gate per line ("x q3", "mcx q0 q1 -> q4", "z q0",
// "mcz q0 q1 q2"; "gflip" for an odd global flip).
std::string serialize(const BooleanOracleCircuit& circ);
std::string serialize(const PhaseOracleCircuit& circ);

}  // namespace qbsat
