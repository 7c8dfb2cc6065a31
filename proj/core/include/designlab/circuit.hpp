#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "designlab/numerics.hpp"

namespace designlab {

enum class GateKind {
  H,
  S,
  T,
  X,
  Y,
  Z,
  CZ,
  CNOT,      // targets: control, target
  TOFFOLI,   // targets: control, control, target
  PHASE,     // diag(1, e^{i theta})
  RESCALED_H,  // sqrt(2) H, path-sum circuits only
  MATRIX,    // dense 2^k x 2^k row-major payload on k targets
  PREPARE,   // unitary taking |0..0> to the normalized amplitude payload
  REFLECT,   // I - 2|w><w| with normalized payload w
};

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  double theta = 0.0;
  // MATRIX / PREPARE / REFLECT payload. Local index uses targets[0] as most significant bit.
  std::shared_ptr<const std::vector<cplx>> payload;
  // Only meaningful for PREPARE: apply the adjoint.
  bool dagger = false;

  static Gate single(GateKind kind, int q) { return Gate{kind, {q}, 0.0, nullptr, false}; }
  static Gate phase(int q, double theta) { return Gate{GateKind::PHASE, {q}, theta, nullptr, false}; }
  static Gate cz(int a, int b) { return Gate{GateKind::CZ, {a, b}, 0.0, nullptr, false}; }
  static Gate cnot(int c, int t) { return Gate{GateKind::CNOT, {c, t}, 0.0, nullptr, false}; }
  static Gate toffoli(int a, int b, int t) {
    return Gate{GateKind::TOFFOLI, {a, b, t}, 0.0, nullptr, false};
  }
  static Gate matrix(std::vector<int> targets, const DenseOperator& m);
  static Gate prepare(std::vector<int> targets, std::vector<cplx> amplitudes);
  static Gate reflect(std::vector<int> targets, std::vector<cplx> w);
};

// Dense matrix of a gate on its own targets (2^k x 2^k). RESCALED_H yields sqrt(2) H.
DenseOperator gate_matrix(const Gate& g);

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}
  Circuit(int n, std::vector<Gate> g) : n_qubits(n), gates(std::move(g)) {}

  Circuit& add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
  }

  // Throws DomainError on arity, range, duplicate-target or payload problems.
  void validate() const;
  Circuit inverse() const;
  bool contains(GateKind kind) const;
};

// Appends the gates of `inner` acting on qubits [offset, offset + inner.n_qubits).
void append_shifted(Circuit& outer, const Circuit& inner, int offset);

// Applies `c` in place to a 2^n_total amplitude buffer; circuit qubit q maps to
// register qubit q + offset. Qubit 0 of the register is the most significant bit.
void apply_circuit(cplx* amplitudes, int n_total, const Circuit& c, int offset = 0);
void apply_gate(cplx* amplitudes, int n_total, const Gate& g, int offset = 0);

// Computational basis state for a string of '0'/'1' with qubit 0 first.
DenseState basis_state(std::string_view bits);

DenseState simulate_state(const Circuit& c, std::string_view input);
DenseState simulate_state(const Circuit& c);  // input |0..0>
DenseOperator circuit_unitary(const Circuit& c);

inline constexpr int kMaxSimQubits = 24;
inline constexpr int kMaxUnitaryQubits = 12;

}  // namespace designlab
