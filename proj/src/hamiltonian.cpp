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

#include "qbsat/hamiltonian.hpp"

#include <bit>
#include <stdexcept>

#include "qbsat/util.hpp"

namespace qbsat {

Dyadic Dyadic::make(std::int64_t num, int k) {
  if (k < 0) throw Error("dyadic exponent must be non-negative");
  if (num == 0) return Dyadic{0, 0};
  while (num % 2 == 0 && k > 0) {
    num /= 2;
    --k;
  }
  return Dyadic{num, k};
}

double Dyadic::to_double() const {
  return static_cast<double>(num) / static_cast<double>(std::int64_t{1} << k);
}

std::string Dyadic::str() const {
  if (k == 0) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(std::int64_t{1} << k);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const int k = std::max(a.k, b.k);
  const std::int64_t num =
      (a.num << (k - a.k)) + (b.num << (k - b.k));
  return Dyadic::make(num, k);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

void PauliZPolynomial::add_term(std::uint32_t mask, const Dyadic& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms.emplace(mask, coeff);
  if (!inserted) {
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void PauliZPolynomial::add(const PauliZPolynomial& other) {
  if (n != other.n) throw Error("cannot add polynomials of different widths");
  for (const auto& [mask, coeff] : other.terms) add_term(mask, coeff);
}

namespace {

// 2^{-|Q|} prod_{j in Q} (I - Z_j), expanded over all subsets of Q.
PauliZPolynomial product_expansion(std::uint32_t qubits, int n) {
  PauliZPolynomial poly;
  poly.n = n;
  const int size = std::popcount(qubits);
  std::uint32_t sub = 0;
  while (true) {
    const int sign = (std::popcount(sub) % 2 == 0) ? 1 : -1;
    poly.add_term(sub, Dyadic::make(sign, size));
    if (sub == qubits) break;
    sub = (sub - qubits) & qubits;  // next subset of qubits
  }
  return poly;
}

}  // namespace

PauliZPolynomial compose_hf(const BooleanGate& gate, int n) {
  if (gate.is_x())
    throw Error("X gate has no function Hamiltonian; only MCX composes");
  std::uint32_t qubits = 0;
  for (int c : gate.controls) {
    if (c < 0 || c >= n) throw Error("control qubit out of range");
    qubits |= std::uint32_t{1} << c;
  }
  return product_expansion(qubits, n);
}

PauliZPolynomial compose_hg(const PhaseGate& gate, int n) {
  if (gate.kind != PhaseGateKind::MCZ)
    throw Error("X gate has no phase Hamiltonian; only MCZ composes");
  if (gate.qubits == 0) throw Error("MCZ must act on at least one qubit");
  if (n < 32 && (gate.qubits >> n) != 0)
    throw Error("MCZ qubit out of range");
  PauliZPolynomial poly = product_expansion(gate.qubits, n);
  for (auto& [mask, coeff] : poly.terms) coeff = -coeff;
  return poly;
}

PauliZPolynomial x_conjugate(const PauliZPolynomial& poly,
                             std::uint32_t flipped) {
  PauliZPolynomial out;
  out.n = poly.n;
  for (const auto& [mask, coeff] : poly.terms) {
    const bool odd = std::popcount(mask & flipped) % 2 == 1;
    out.terms.emplace(mask, odd ? -coeff : coeff);
  }
  return out;
}

PauliZPolynomial generate_hc(const PhaseOracleCircuit& circ,
                             std::vector<HgTraceEntry>* trace) {
  PauliZPolynomial hc;
  hc.n = circ.n_inputs;
  std::uint32_t frame = 0;
  for (const auto& gate : circ.gates) {
    if (gate.kind == PhaseGateKind::X) {
      frame ^= std::uint32_t{1} << gate.target;
      continue;
    }
    const PauliZPolynomial raw = compose_hg(gate, circ.n_inputs);
    const PauliZPolynomial conj = x_conjugate(raw, frame);
    hc.add(conj);
    if (trace != nullptr)
      trace->push_back(HgTraceEntry{gate.qubits, frame, raw, conj});
  }
  if (circ.phase_flips != 0)
    hc.add_term(0, Dyadic::from_int(-static_cast<std::int64_t>(circ.phase_flips)));
  return hc;
}

std::vector<double> diag(const PauliZPolynomial& poly) {
  const std::size_t size = std::size_t{1} << poly.n;
  std::vector<double> values(size, 0.0);
  for (const auto& [mask, coeff] : poly.terms)
    values[mask] = coeff.to_double();
  // Walsh-Hadamard butterfly: E(x) = sum_S c_S (-1)^{popcount(S & x)}.
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = values[j];
        const double b = values[j + h];
        values[j] = a + b;
        values[j + h] = a - b;
      }
    }
  }
  return values;
}

namespace {

std::string z_string(std::uint32_t mask, int n) {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int j = 0; j < n; ++j)
    if ((mask >> j) & 1u) s[static_cast<std::size_t>(n - 1 - j)] = 'Z';
  return s;
}

}  // namespace

std::vector<std::pair<std::string, double>> to_pauli_strings(
    const PauliZPolynomial& poly) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(poly.terms.size());
  // std::map iterates masks in ascending order, so the identity (mask 0)
  // is naturally first.
  for (const auto& [mask, coeff] : poly.terms)
    out.emplace_back(z_string(mask, poly.n), coeff.to_double());
  return out;
}

Mixer build_mixer(int n, double omega) {
  if (n < 1) throw Error("mixer needs at least one qubit");
  if (n > kMaxVars) throw CapError("mixer exceeds the supported qubit count");
  if (!(omega > 0.0)) throw Error("mixer weight must be positive");
  Mixer m;
  m.n = n;
  m.omega.assign(static_cast<std::size_t>(n), omega);
  return m;
}

std::vector<std::pair<std::string, double>> mixer_strings(const Mixer& m) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(static_cast<std::size_t>(m.n));
  for (int j = m.n - 1; j >= 0; --j) {
    std::string s(static_cast<std::size_t>(m.n), 'I');
    s[static_cast<std::size_t>(m.n - 1 - j)] = 'X';
    out.emplace_back(std::move(s), m.omega[static_cast<std::size_t>(j)]);
  }
  return out;
}

nlohmann::ordered_json hamiltonian_json(
    const std::vector<std::pair<std::string, double>>& terms) {
  nlohmann::ordered_json j;
  j["paulis"] = nlohmann::ordered_json::array();
  j["coeffs"] = nlohmann::ordered_json::array();
  for (const auto& [pauli, coeff] : terms) {
    j["paulis"].push_back(pauli);
    j["coeffs"].push_back(coeff);
  }
  return j;
}

}  // namespace qbsat
