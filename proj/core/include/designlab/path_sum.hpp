#pragma once

#include <cstdint>
#include <vector>

#include "designlab/circuit.hpp"

namespace designlab {

// Qubit permutation observable: qubit j of the ket is moved to position perm[j].
using QubitPerm = std::vector<int>;

struct PathSumResult {
  std::uint64_t s_f = 0;  // satisfying (alpha, beta, b) tuples
  int h = 0;              // Hadamard count
  int gates = 0;          // M
  int L = 0;              // 2 M width
  double reconstructed = 0.0;  // 2^{-h} (s_f - 2^L)
};

inline constexpr int kMaxPathBits = 20;

// Counts f(alpha, beta, b) = [g(alpha) g(beta) hbar(alpha_M, beta_M) >= b] over
// all {0,1}^{L+1}, where H gates carry the rescaled entries +-1. Accepts H,
// RESCALED_H, TOFFOLI, and the Toffoli special cases X and CNOT.
PathSumResult path_sum_count(const Circuit& c, const QubitPerm& perm);

// <psi|P|psi> with psi = C|0..0> by statevector simulation (RESCALED_H read as H).
double path_sum_direct(const Circuit& c, const QubitPerm& perm);

struct DoubledEncoding {
  Circuit circuit;
  QubitPerm perm;
};

// Two copies of `encoder` (on kappa + n t qubits each, register A first) plus
// one trailing ancilla; perm swaps the two A registers.
DoubledEncoding doubled_encoding_circuit(const Circuit& encoder, int kappa, int n, int t);

}  // namespace designlab
