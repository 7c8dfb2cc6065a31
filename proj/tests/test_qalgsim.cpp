#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/qalgsim.hpp"
#include "oracle.hpp"

using namespace designlab;

namespace {

SetDescriptor random_explicit(SetKind kind, int n, std::uint64_t k, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> pick(0, 2), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Circuit> cs;
  for (std::uint64_t j = 0; j < k; ++j) {
    Circuit c(n);
    for (int g = 0; g < 3 * n; ++g) {
      const int a = qubit(gen);
      const int p = pick(gen);
      if (p == 0) c.add(Gate::single(GateKind::H, a));
      else if (p == 1 || n == 1) c.add(Gate::phase(a, angle(gen)));
      else c.add(Gate::cnot(a, (a + 1) % n));
    }
    cs.push_back(c);
  }
  return explicit_descriptor(kind, n, cs);
}

}  // namespace

TEST(Encoded, RegisterWidth) {
  EXPECT_EQ(register_width(1), 0);
  EXPECT_EQ(register_width(2), 1);
  EXPECT_EQ(register_width(5), 3);
  EXPECT_EQ(register_width(8), 3);
}

TEST(Encoded, ReducedStateIsGramTranspose) {
  const auto s = phase_state_set(2, 3, 1);
  const auto e = build_encoded_state(s, 2);
  ASSERT_EQ(e.rho_a.rows(), 3);
  EXPECT_TRUE(is_density(e.rho_a));
  const auto cols = materialize_states(s);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const cplx ov = cols.col(j).dot(cols.col(i));
      EXPECT_NEAR(std::abs(e.rho_a(i, j) - ov * ov / 3.0), 0.0, 1e-12);
    }
}

TEST(Encoded, PurityMatchesGramOnRandomSets) {
  for (std::uint32_t s = 0; s < 12; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const int t = 1 + static_cast<int>(s % 2);
    const auto st = random_explicit(SetKind::State, n, 3 + s, s);
    EXPECT_NEAR(fp_via_purity(st, t), frame_potential(st, t), 1e-9);
    const auto un = random_explicit(SetKind::Unitary, n, 2 + s, 100 + s);
    const double f = frame_potential(un, t);
    EXPECT_NEAR(fp_via_purity(un, t), f, 1e-9 * std::max(1.0, f));
  }
}

TEST(Encoded, SizeGuard) { EXPECT_THROW(build_encoded_state(pauli_set(4), 3), SizeGuardError); }

TEST(SwapTest, GateProbability) {
  const auto s = computational_basis_set(1);
  EXPECT_NEAR(swap_test_gate_probability(s, 1, {0.75, 0.5, 1, 0}), 2.0 / 3.25, 1e-15);
  const auto p = pauli_set(1);
  EXPECT_NEAR(swap_test_gate_probability(p, 1, {2.0, 1.0, 1, 0}), 2.0 / (2.0 + 3.0 / 4.0), 1e-15);
}

TEST(SwapTest, AcceptanceNearAnalyticAndDeterministic) {
  const auto s = computational_basis_set(1);
  const SwapTestPlan plan{0.75, 0.5, 200000, 17};
  const auto r = swap_test_decide(s, 1, plan);
  EXPECT_NEAR(r.frame_potential, 0.5, 1e-15);
  EXPECT_NEAR(r.expected_accept, r.p_gate * 0.75, 1e-15);
  EXPECT_LT(std::abs(r.accept_rate - r.expected_accept), 5.0 * r.std_error);
  const auto again = swap_test_decide(s, 1, plan);
  EXPECT_EQ(again.accepted, r.accepted);
  EXPECT_FALSE(r.at_least_alpha);  // F = beta
}

TEST(SwapTest, DecidesBothPromiseBranches) {
  // F_1 = 1 for three copies of |0>, F_1 = 1/2 for the basis.
  const auto same = explicit_descriptor(SetKind::State, 1, {Circuit(1), Circuit(1)});
  const SwapTestPlan plan{1.0, 0.5, 400000, 3};
  EXPECT_TRUE(swap_test_decide(same, 1, plan).at_least_alpha);
  EXPECT_FALSE(swap_test_decide(computational_basis_set(1), 1, plan).at_least_alpha);
}

TEST(SwapTest, PlanValidation) {
  const auto s = computational_basis_set(1);
  EXPECT_THROW(swap_test_decide(s, 1, {0.5, 0.75, 10, 0}), DomainError);
  EXPECT_THROW(swap_test_decide(s, 1, {0.75, 0.5, 0, 0}), DomainError);
  EXPECT_THROW(swap_test_decide(s, 1, {0.75, 0.2, 10, 0}), DomainError);
}
