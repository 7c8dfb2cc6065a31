#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "oracle.hpp"

using namespace designlab;

namespace {

std::vector<oracle::Vec> phase_states(int n, std::uint64_t k, int m) {
  std::vector<oracle::Vec> out;
  for (std::uint64_t j = 1; j <= k; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
    oracle::Vec v = oracle::Vec::Ones(1);
    const oracle::Vec plus_phase = (oracle::Vec(2) << 1.0, std::polar(1.0, th)).finished() / std::sqrt(2.0);
    for (int q = 0; q < n; ++q) v = oracle::kron(v, q < m ? plus_phase : oracle::basis(0, 1));
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Basis, FramePotential) {
  for (int n = 1; n <= 4; ++n)
    for (int t = 1; t <= 3; ++t) EXPECT_NEAR(frame_potential(computational_basis_set(n), t), std::ldexp(1.0, -n), 1e-12);
}

TEST(PhaseStates, ClosedFormAgainstOracle) {
  for (int m = 1; m <= 2; ++m)
    for (int t = 1; t <= 3; ++t) {
      const std::uint64_t k = static_cast<std::uint64_t>(m * t) + 1 + static_cast<std::uint64_t>(t);
      const double naive = oracle::state_fp(phase_states(m + 1, k, m), t);
      EXPECT_NEAR(frame_potential(phase_state_set(m + 1, k, m), t), naive, 1e-12);
      // 2^{1-2mt} C(2mt-1, mt-1)
      const double closed = std::ldexp(static_cast<double>(oracle::binom(2 * m * t - 1, m * t - 1)), 1 - 2 * m * t);
      EXPECT_NEAR(naive, closed, 1e-12) << "m=" << m << " t=" << t;
      EXPECT_NEAR(phase_state_fp(m, t), closed, 1e-15);
    }
}

TEST(PhaseStates, SmallCardinalityBreaksClosedForm) {
  // K = 2 <= m t: the closed form needs K > m t.
  EXPECT_NEAR(frame_potential(phase_state_set(3, 2, 2), 1), 0.5, 1e-12);
  EXPECT_NEAR(phase_state_fp(2, 1), 0.375, 1e-15);
  EXPECT_THROW(phase_state_set(2, 4, 2), DomainError);
}

TEST(Pauli, ExactOneDesign) {
  for (int n = 1; n <= 3; ++n) {
    const auto p = pauli_set(n);
    EXPECT_EQ(p.cardinality, std::uint64_t{1} << (2 * n));
    EXPECT_NEAR(frame_potential(p, 1), 1.0, 1e-12);
  }
  std::vector<oracle::Mat> ps;
  for (int i = 0; i < 16; ++i) ps.push_back(oracle::pauli(i, 2));
  EXPECT_NEAR(frame_potential(pauli_set(2), 2), oracle::unitary_fp(ps, 2), 1e-9);
}

TEST(Clifford, GroupOrders) {
  EXPECT_EQ(clifford_set(1).cardinality, 24u);
  EXPECT_EQ(clifford_set(2).cardinality, 11520u);
  EXPECT_THROW(clifford_set(3), DomainError);
}

TEST(Clifford, SingleQubitMapsPaulisToPaulisAndIsClosed) {
  const auto c = clifford_set(1);
  std::vector<oracle::Mat> us;
  for (std::uint64_t j = 1; j <= c.cardinality; ++j) us.push_back(circuit_unitary(c.resolve(j)));
  auto index_of = [&](const oracle::Mat& m) {
    for (std::size_t i = 0; i < us.size(); ++i)
      if (std::abs(std::abs((us[i].adjoint() * m).trace()) - 2.0) < 1e-9) return static_cast<int>(i);
    return -1;
  };
  for (const auto& a : us) {
    for (int p = 1; p < 4; ++p) {
      const oracle::Mat img = a * oracle::pauli(p, 1) * a.adjoint();
      double best = 0;
      for (int q = 1; q < 4; ++q) best = std::max(best, std::abs((img * oracle::pauli(q, 1)).trace()));
      EXPECT_NEAR(best, 2.0, 1e-12);
    }
    for (const auto& b : us) EXPECT_GE(index_of(a * b), 0);
  }
  std::set<int> seen;
  for (const auto& a : us) seen.insert(index_of(a));
  EXPECT_EQ(seen.size(), 24u);
}

TEST(Clifford, FramePotentials) {
  const auto c = clifford_set(1);
  const double expected[] = {1, 2, 5, 15};
  for (int t = 1; t <= 4; ++t) EXPECT_NEAR(frame_potential(c, t), expected[t - 1], 1e-9);
  EXPECT_GT(frame_potential(c, 4), static_cast<double>(oracle::haar_unitary_fp(2, 4)));
}

TEST(Haar, UnitaryFramePotentialMatchesCommutantRank) {
  for (int d = 1; d <= 4; ++d)
    for (int t = 0; t <= 5; ++t) EXPECT_EQ(haar_unitary_fp(d, t), oracle::haar_unitary_fp(d, t)) << d << "," << t;
  EXPECT_EQ(haar_unitary_fp(2, 3), 5u);
  EXPECT_EQ(haar_unitary_fp(2, 4), 14u);
  EXPECT_EQ(haar_unitary_fp(5, 4), 24u);
}

TEST(SubsetPhase, SpecAndStates) {
  const auto spec = random_subset_spec(3, 4, 5, 1);
  EXPECT_EQ(spec.chi(), 4u);
  EXPECT_EQ(spec.k(), 5u);
  const auto back = subset_spec_from_json(subset_spec_to_json(spec));
  EXPECT_EQ(back.subset, spec.subset);
  EXPECT_EQ(back.phases, spec.phases);
  const auto s = subset_phase_set(spec);
  std::vector<oracle::Vec> vs;
  for (std::uint64_t j = 0; j < spec.k(); ++j) {
    oracle::Vec v = oracle::Vec::Zero(8);
    for (std::size_t x = 0; x < spec.chi(); ++x)
      v(std::stoi(spec.subset[x], nullptr, 2)) = (spec.phases[j][x] ? -1.0 : 1.0) / 2.0;
    vs.push_back(v);
  }
  EXPECT_NEAR(frame_potential(s, 2), oracle::state_fp(vs, 2), 1e-12);
  SubsetPhaseSpec bad = spec;
  bad.subset[1] = bad.subset[0];
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Thresholds, MinCardinality) {
  EXPECT_NEAR(min_cardinality(ThresholdKind::State, 2, 2, 0.0).value, 3.0, 1e-15);
  EXPECT_NEAR(min_cardinality(ThresholdKind::Unitary, 2, 2, 0.0).value, 8.0, 1e-15);
  EXPECT_NEAR(min_cardinality(ThresholdKind::State, 4, 1, 1.0).value, 2.0, 1e-15);
  EXPECT_THROW(min_cardinality(ThresholdKind::State, 2, 1, -1.0), DomainError);
}
