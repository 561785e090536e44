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

#include "qbsat/circuit.hpp"

#include <algorithm>
#include <bit>

namespace qbsat {

namespace {

BooleanGate x_gate(int target) { return BooleanGate{{}, target}; }

BooleanGate mcx_gate(std::vector<int> controls, int target) {
  std::sort(controls.begin(), controls.end());
  controls.erase(std::unique(controls.begin(), controls.end()),
                 controls.end());
  return BooleanGate{std::move(controls), target};
}

}  // namespace

BooleanOracleCircuit build_esop_oracle(const EsopForm& form) {
  BooleanOracleCircuit circ;
  circ.n_inputs = form.n;
  circ.n_ancilla = 1;
  int f = circ.fqubit();
  for (const Cube& cube : form.cubes) {
    if (cube.pos == 0 && cube.neg == 0) {
      circ.gates.push_back(x_gate(f));
      continue;
    }
    std::vector<int> controls;
    std::vector<int> negated;
    for (int j = 0; j < form.n; ++j) {
      if (cube.pos >> j & 1u) controls.push_back(j);
      if (cube.neg >> j & 1u) {
        controls.push_back(j);
        negated.push_back(j);
      }
    }
    for (int j : negated) circ.gates.push_back(x_gate(j));
    circ.gates.push_back(mcx_gate(controls, f));
    for (int j : negated) circ.gates.push_back(x_gate(j));
  }
  return circ;
}

namespace {

// An operand is a qubit read either directly or through a negation.
struct Operand {
  int qubit = 0;
  bool negated = false;
};

// Forward-computes every non-literal subterm into a fresh (or shared)
// ancilla, then lets the caller combine the root into the fqubit and
// append the mirror. The fqubit index is unknown until all ancillae are
// allocated, so it is temporarily marked and patched afterwards.
class OracleBuilder {
 public:
  static constexpr int kFqubitMark = 1 << 30;

  explicit OracleBuilder(const Formula& f) : formula_(f) {
    next_ancilla_ = f.n();
  }

  BooleanOracleCircuit run() {
    BooleanOracleCircuit circ;
    circ.n_inputs = formula_.n();
    const BoolExprPtr& root = formula_.root;

    if (root->kind == NodeKind::Const) {
      if (root->value) top_.push_back(x_gate(kFqubitMark));
    } else if (root->kind == NodeKind::Var || root->kind == NodeKind::Not) {
      Operand op = compute(root);
      top_.push_back(mcx_gate({op.qubit}, kFqubitMark));
      if (op.negated) top_.push_back(x_gate(kFqubitMark));
    } else {
      std::vector<Operand> ops;
      ops.reserve(root->children.size());
      for (const auto& c : root->children) ops.push_back(compute(c));
      combine(root->kind, ops, kFqubitMark, top_);
    }

    circ.n_ancilla = next_ancilla_ - formula_.n() + 1;
    int f = circ.fqubit();
    circ.gates = forward_;
    for (auto& g : top_) {
      if (g.target == kFqubitMark) g.target = f;
      circ.gates.push_back(std::move(g));
    }
    for (auto it = forward_.rbegin(); it != forward_.rend(); ++it)
      circ.gates.push_back(*it);
    circ.mirrored = !forward_.empty();
    return circ;
  }

 private:
  const Formula& formula_;
  int next_ancilla_;
  std::vector<BooleanGate> forward_;
  std::vector<BooleanGate> top_;
  std::map<std::string, int> shared_;  // structural key -> ancilla qubit

  // Canonical structural key; children of commutative nodes are sorted so
  // that (a & b) and (b & a) share one ancilla.
  std::string key_of(const BoolExprPtr& e) {
    switch (e->kind) {
      case NodeKind::Const:
        return e->value ? "1" : "0";
      case NodeKind::Var:
        return "v" + std::to_string(e->var);
      case NodeKind::Not:
        return "!" + key_of(e->children[0]);
      default: {
        std::vector<std::string> kids;
        kids.reserve(e->children.size());
        for (const auto& c : e->children) kids.push_back(key_of(c));
        std::sort(kids.begin(), kids.end());
        std::string out = e->kind == NodeKind::And  ? "&("
                          : e->kind == NodeKind::Or ? "|("
                                                    : "^(";
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (i) out += ',';
          out += kids[i];
        }
        out += ')';
        return out;
      }
    }
  }

  Operand compute(const BoolExprPtr& e) {
    switch (e->kind) {
      case NodeKind::Const:
        throw UnsupportedStructureError(
            "constant subterm is not supported by the structural oracle "
            "builder");
      case NodeKind::Var:
        return {e->var, false};
      case NodeKind::Not: {
        Operand op = compute(e->children[0]);
        op.negated = !op.negated;
        return op;
      }
      default: {
        std::string key = key_of(e);
        auto it = shared_.find(key);
        if (it != shared_.end()) return {it->second, false};
        std::vector<Operand> ops;
        ops.reserve(e->children.size());
        for (const auto& c : e->children) ops.push_back(compute(c));
        int anc = next_ancilla_++;
        combine(e->kind, ops, anc, forward_);
        shared_.emplace(std::move(key), anc);
        return {anc, false};
      }
    }
  }

  // Deduplicates operands per qubit and reports polarity conflicts, which
  // the gate constructions below cannot express.
  static std::vector<Operand> dedupe(const std::vector<Operand>& ops) {
    std::map<int, bool> polarity;
    for (const Operand& op : ops) {
      auto [it, inserted] = polarity.emplace(op.qubit, op.negated);
      if (!inserted && it->second != op.negated)
        throw UnsupportedStructureError(
            "clause uses one operand in both polarities");
    }
    std::vector<Operand> out;
    out.reserve(polarity.size());
    for (auto [q, neg] : polarity) out.push_back({q, neg});
    return out;
  }

  void combine(NodeKind kind, const std::vector<Operand>& ops, int target,
               std::vector<BooleanGate>& sink) {
    if (kind == NodeKind::Xor) {
      // target ^= op1 ^ op2 ^ ...; each negation toggles the parity once.
      int parity = 0;
      for (const Operand& op : ops) {
        sink.push_back(mcx_gate({op.qubit}, target));
        if (op.negated) parity ^= 1;
      }
      if (parity) sink.push_back(x_gate(target));
      return;
    }
    std::vector<Operand> uniq = dedupe(ops);
    std::vector<int> controls;
    controls.reserve(uniq.size());
    for (const Operand& op : uniq) controls.push_back(op.qubit);
    if (kind == NodeKind::And) {
      // Controls must read the operand value: conjugate negated operands.
      for (const Operand& op : uniq)
        if (op.negated) sink.push_back(x_gate(op.qubit));
      sink.push_back(mcx_gate(controls, target));
      for (const Operand& op : uniq)
        if (op.negated) sink.push_back(x_gate(op.qubit));
    } else {  // Or, by De Morgan: OR(l...) = NOT(AND(NOT l...))
      for (const Operand& op : uniq)
        if (!op.negated) sink.push_back(x_gate(op.qubit));
      sink.push_back(mcx_gate(controls, target));
      sink.push_back(x_gate(target));
      for (const Operand& op : uniq)
        if (!op.negated) sink.push_back(x_gate(op.qubit));
    }
  }
};

}  // namespace

BooleanOracleCircuit build_boolean_oracle(const Formula& f) {
  return OracleBuilder(f).run();
}

SimulationResult classical_simulate(const BooleanOracleCircuit& circ,
                                    std::uint32_t x) {
  if (circ.width() > 64)
    throw CapError("classical simulation limited to 64 qubits");
  std::uint64_t state = x & ((circ.n_inputs >= 32)
                                 ? ~0ull
                                 : ((1ull << circ.n_inputs) - 1ull));
  for (const BooleanGate& g : circ.gates) {
    if (g.is_x()) {
      state ^= 1ull << g.target;
    } else {
      bool all = true;
      for (int c : g.controls)
        if (!(state >> c & 1ull)) {
          all = false;
          break;
        }
      if (all) state ^= 1ull << g.target;
    }
  }
  SimulationResult res;
  res.fqubit = static_cast<int>(state >> circ.fqubit() & 1ull);
  for (int q = circ.n_inputs; q < circ.fqubit(); ++q)
    res.ancilla_residue.push_back(static_cast<int>(state >> q & 1ull));
  return res;
}

namespace {

std::string gate_text(const BooleanGate& g) {
  if (g.is_x()) return "x q" + std::to_string(g.target);
  std::string s = "mcx";
  for (int c : g.controls) s += " q" + std::to_string(c);
  s += " -> q" + std::to_string(g.target);
  return s;
}

std::string gate_text(const PhaseGate& g) {
  if (g.kind == PhaseGateKind::X) return "x q" + std::to_string(g.target);
  int size = std::popcount(g.qubits);
  std::string s = size == 1 ? "z" : "mcz";
  for (int j = 0; j < 32; ++j)
    if (g.qubits >> j & 1u) s += " q" + std::to_string(j);
  return s;
}

}  // namespace

PhaseOracleCircuit transform_to_phase(const BooleanOracleCircuit& circ) {
  if (circ.n_ancilla != 1)
    throw TransformError(
        "phase transformation requires exactly one ancilla (the fqubit), "
        "got " +
        std::to_string(circ.n_ancilla));
  int f = circ.fqubit();
  PhaseOracleCircuit out;
  out.n_inputs = circ.n_inputs;
  for (std::size_t i = 0; i < circ.gates.size(); ++i) {
    const BooleanGate& g = circ.gates[i];
    if (g.is_x()) {
      if (g.target == f) {
        ++out.phase_flips;
      } else if (g.target < circ.n_inputs) {
        out.gates.push_back({PhaseGateKind::X, g.target, 0});
      } else {
        throw TransformError("gate " + std::to_string(i) + " ('" +
                             gate_text(g) + "') acts on a non-input qubit");
      }
    } else {
      if (g.target != f)
        throw TransformError("gate " + std::to_string(i) + " ('" +
                             gate_text(g) + "') does not target the fqubit");
      std::uint32_t mask = 0;
      for (int c : g.controls) {
        if (c >= circ.n_inputs)
          throw TransformError("gate " + std::to_string(i) + " ('" +
                               gate_text(g) +
                               "') has a non-input control qubit");
        mask |= 1u << c;
      }
      out.gates.push_back({PhaseGateKind::MCZ, -1, mask});
    }
  }
  return out;
}

int phase_of(const PhaseOracleCircuit& circ, std::uint32_t x) {
  std::uint32_t frame = 0;
  int sign = (circ.phase_flips % 2) ? -1 : 1;
  for (const PhaseGate& g : circ.gates) {
    if (g.kind == PhaseGateKind::X) {
      frame ^= 1u << g.target;
    } else {
      if (((x ^ frame) & g.qubits) == g.qubits) sign = -sign;
    }
  }
  return sign;
}

std::vector<StageCounts> gate_report(
    const std::vector<std::pair<std::string, StageCircuit>>& stages) {
  std::vector<StageCounts> rows;
  rows.reserve(stages.size());
  for (const auto& [name, circ] : stages) {
    StageCounts row;
    row.name = name;
    if (std::holds_alternative<const BooleanOracleCircuit*>(circ)) {
      const auto* bc = std::get<const BooleanOracleCircuit*>(circ);
      row.inputs = bc->n_inputs;
      row.ancillae = bc->n_ancilla;
      row.mirror = bc->mirrored;
      for (const BooleanGate& g : bc->gates) {
        if (g.is_x())
          ++row.x;
        else
          ++row.mcx[static_cast<int>(g.controls.size()) + 1];
      }
    } else {
      const auto* pc = std::get<const PhaseOracleCircuit*>(circ);
      row.inputs = pc->n_inputs;
      row.ancillae = 0;
      for (const PhaseGate& g : pc->gates) {
        if (g.kind == PhaseGateKind::X)
          ++row.x;
        else
          ++row.mcz[std::popcount(g.qubits)];
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json gate_report_json(const std::vector<StageCounts>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const StageCounts& row : rows) {
    nlohmann::ordered_json r;
    r["inputs"] = row.inputs;
    r["ancillae"] = row.ancillae;
    r["x"] = row.x;
    nlohmann::ordered_json mcx = nlohmann::ordered_json::object();
    for (auto [bits, count] : row.mcx) mcx[std::to_string(bits)] = count;
    r["mcx"] = mcx;
    nlohmann::ordered_json mcz = nlohmann::ordered_json::object();
    for (auto [size, count] : row.mcz) mcz[std::to_string(size)] = count;
    r["mcz"] = mcz;
    r["mirror"] = row.mirror;
    out[row.name] = r;
  }
  return out;
}

std::string serialize(const BooleanOracleCircuit& circ) {
  std::string out = "qubits " + std::to_string(circ.n_inputs) + " " +
                    std::to_string(circ.n_ancilla) + "\n";
  for (const BooleanGate& g : circ.gates) out += gate_text(g) + "\n";
  return out;
}

std::string serialize(const PhaseOracleCircuit& circ) {
  std::string out = "qubits " + std::to_string(circ.n_inputs) + " 0\n";
  for (const PhaseGate& g : circ.gates) out += gate_text(g) + "\n";
  if (circ.phase_flips % 2) out += "gflip\n";
  return out;
}

}  // namespace qbsat
