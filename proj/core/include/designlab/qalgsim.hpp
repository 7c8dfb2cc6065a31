#pragma once

#include <cstdint>
#include <string>

#include "designlab/numerics.hpp"
#include "designlab/set_descriptor.hpp"

namespace designlab {

struct EncodedState {
  SetKind kind = SetKind::State;
  int t = 1;
  int kappa = 0;       // ceil(log2 K) qubits in register A
  std::uint64_t k = 0;  // logical dimension of A
  int n_qubits = 0;
  DenseOperator rho_a;  // K x K reduced state on A
};

inline constexpr int kMaxEncodedQubits = 24;

int register_width(std::uint64_t k);

// Simulates the controlled application of U_j to t copies of |0_n> (state
// sets) or to the B halves of t maximally entangled pairs B_m R_m (unitary
// sets), with A in the uniform superposition over K basis states, and traces
// out everything but A.
EncodedState build_encoded_state(const SetDescriptor& s, int t);

// Tr(rho_A^2), times 2^{2nt} for unitary sets.
double fp_via_purity(const SetDescriptor& s, int t);
double purity_to_fp(const EncodedState& e);

struct SwapTestPlan {
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
};

struct SwapTestResult {
  double accept_rate = 0.0;
  // true: F >= alpha; false: F <= beta.
  bool at_least_alpha = false;
  double std_error = 0.0;
  double p_gate = 0.0;
  // p(1+F)/2 for states, p(1+F/2^{2tn})/2 for unitaries, from the exact F.
  double expected_accept = 0.0;
  double frame_potential = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Gate probability 2/(2+alpha+beta), with alpha, beta divided by 2^{2tn} for unitary sets.
double swap_test_gate_probability(const SetDescriptor& s, int t, const SwapTestPlan& plan);

// Monte-Carlo simulation of the swap-test decider at the probability level.
// Trial i draws from a counter PRNG keyed by (seed, i).
SwapTestResult swap_test_decide(const SetDescriptor& s, int t, const SwapTestPlan& plan);

}  // namespace designlab
