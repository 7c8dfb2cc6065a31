#include "designlab/qalgsim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/parallel.hpp"
#include "designlab/rng.hpp"

namespace designlab {

int register_width(std::uint64_t k) {
  int kappa = 0;
  while ((std::uint64_t{1} << kappa) < k) ++kappa;
  return kappa;
}

EncodedState build_encoded_state(const SetDescriptor& s, int t) {
  s.validate();
  if (t < 1) throw DomainError("build_encoded_state: t must be at least 1");
  const int kappa = register_width(s.cardinality);
  const int n = s.n_qubits;
  const bool unitary = s.kind == SetKind::Unitary;
  const int block_qubits = (unitary ? 2 : 1) * n * t;
  require_size(kappa + block_qubits <= kMaxEncodedQubits,
               unitary ? "encoded register kappa + 2nt <= 24" : "encoded register kappa + nt <= 24",
               "kappa = " + std::to_string(kappa) + ", n = " + std::to_string(n) + ", t = " + std::to_string(t));

  const auto block = static_cast<Eigen::Index>(std::uint64_t{1} << block_qubits);
  const auto k = static_cast<Eigen::Index>(s.cardinality);

  // Initial block shared by every branch of A.
  DenseState init;
  if (unitary) {
    // B_m R_m pairs in |Phi_n>, ordered B_1 R_1 B_2 R_2 ...
    DenseState phi = DenseState::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << (2 * n)));
    const double amp = std::pow(2.0, -0.5 * n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      phi(static_cast<Eigen::Index>((x << n) | x)) = amp;
    init = tensor_power(phi, t);
  } else {
    init = tensor_power(basis_state(s.input_string()), t);
  }

  // Column j holds the B (and R) amplitudes of branch |j>_A, already scaled by K^{-1/2}.
  Eigen::MatrixXcd branches(block, k);
  const double norm = 1.0 / std::sqrt(static_cast<double>(s.cardinality));
  parallel_for(s.cardinality, [&](std::size_t j) {
    const Circuit c = s.resolve(j + 1);
    DenseState v = init * norm;
    for (int m = 0; m < t; ++m) apply_circuit(v.data(), block_qubits, c, (unitary ? 2 : 1) * n * m);
    branches.col(static_cast<Eigen::Index>(j)) = v;
  });

  EncodedState e;
  e.kind = s.kind;
  e.t = t;
  e.kappa = kappa;
  e.k = s.cardinality;
  e.n_qubits = n;
  e.rho_a = (branches.adjoint() * branches).transpose();
  if (!is_density(e.rho_a, 1e-12, 1e-10))
    throw VerificationError("build_encoded_state: reduced state is not a density operator");
  return e;
}

double purity_to_fp(const EncodedState& e) {
  const double purity = e.rho_a.cwiseAbs2().sum();
  if (e.kind == SetKind::State) return purity;
  return std::ldexp(purity, 2 * e.n_qubits * e.t);
}

double fp_via_purity(const SetDescriptor& s, int t) { return purity_to_fp(build_encoded_state(s, t)); }

double swap_test_gate_probability(const SetDescriptor& s, int t, const SwapTestPlan& plan) {
  double a = plan.alpha, b = plan.beta;
  if (s.kind == SetKind::Unitary) {
    a = std::ldexp(a, -2 * t * s.n_qubits);
    b = std::ldexp(b, -2 * t * s.n_qubits);
  }
  return 2.0 / (2.0 + a + b);
}

SwapTestResult swap_test_decide(const SetDescriptor& s, int t, const SwapTestPlan& plan) {
  if (t < 1) throw DomainError("swap_test_decide: t must be at least 1");
  if (plan.samples < 1) throw DomainError("swap test plan: need at least one sample");
  if (!(plan.alpha > plan.beta)) throw DomainError("swap test plan: need alpha > beta");
  const auto [lo, hi] = frame_potential_bounds(s.kind, s.dim(), s.cardinality, t);
  if (plan.beta < lo - kDefaultTol * std::max(1.0, lo))
    throw DomainError("swap test plan: beta below the promise lower bound " + std::to_string(lo));
  (void)hi;

  const bool unitary = s.kind == SetKind::Unitary;
  require_size(s.cardinality <= kMaxGramCardinality, "Gram loop K <= 2^14",
               "K = " + std::to_string(s.cardinality));
  const Eigen::MatrixXcd elems = unitary ? materialize_unitaries(s) : materialize_states(s);
  const double scale = unitary ? 1.0 / static_cast<double>(s.dim()) : 1.0;

  SwapTestResult r;
  r.p_gate = swap_test_gate_probability(s, t, plan);
  r.samples = plan.samples;
  r.seed = plan.seed;
  r.frame_potential = gram_frame_potential(elems, t);
  const double f_scaled = unitary ? std::ldexp(r.frame_potential, -2 * t * s.n_qubits) : r.frame_potential;
  r.expected_accept = r.p_gate * (1.0 + f_scaled) / 2.0;

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (plan.samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> counts(chunks, 0);
  const std::uint64_t k = s.cardinality;
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(plan.samples, begin + kChunk);
    std::uint64_t acc = 0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      const CounterRng rng(plan.seed, trial);
      if (rng.uniform(0) >= r.p_gate) continue;  // gated out: reject
      const auto i = static_cast<Eigen::Index>(rng.below(1, k));
      const auto j = static_cast<Eigen::Index>(rng.below(2, k));
      const double ov = std::abs(elems.col(i).dot(elems.col(j))) * scale;
      const double p_acc = (1.0 + std::pow(ov * ov, t)) / 2.0;
      if (rng.uniform(3) < p_acc) ++acc;
    }
    counts[c] = acc;
  });
  for (auto c : counts) r.accepted += c;
  const double n = static_cast<double>(plan.samples);
  r.accept_rate = static_cast<double>(r.accepted) / n;
  r.std_error = std::sqrt(r.accept_rate * (1.0 - r.accept_rate) / n);
  r.at_least_alpha = r.accept_rate > 0.5;
  return r;
}

}  // namespace designlab
