#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/varopt.hpp"
#include "oracle.hpp"

using namespace designlab;

namespace {

ParamFamily phase_family(std::uint64_t k, bool free_polar = false) {
  ParamFamily f;
  f.kind = FamilyKind::PhaseAngles;
  f.n = 1;
  f.k = k;
  f.free_polar = free_polar;
  return f;
}

}  // namespace

TEST(Varopt, EqualAnglesGiveOne) {
  const auto fam = phase_family(4);
  for (int t = 1; t <= 3; ++t) EXPECT_NEAR(objective(fam, {0.3, 0.3, 0.3, 0.3}, t), 1.0, 1e-12);
}

TEST(Varopt, EquallySpacedAnglesAttainClosedForm) {
  for (int t = 1; t <= 3; ++t) {
    const std::uint64_t k = t + 1;
    std::vector<double> theta(k);
    for (std::uint64_t j = 0; j < k; ++j) theta[j] = 2.0 * std::numbers::pi * j / k;
    const double want = std::pow(2.0, 1 - 2 * t) * oracle::binom(2 * t - 1, t - 1);
    EXPECT_NEAR(objective(phase_family(k), theta, t), want, 1e-12);
  }
}

TEST(Varopt, BindMatchesOracleStates) {
  const auto fam = phase_family(3, true);
  const std::vector<double> theta = {0.1, 0.2, 1.3, 2.4, 3.5, 4.6};
  std::vector<oracle::Vec> s;
  for (int j = 0; j < 3; ++j) {
    const oracle::Mat u = oracle::Pm(theta[2 * j + 1]) * oracle::Hm() * oracle::Pm(theta[2 * j]) * oracle::Hm();
    s.push_back(u.col(0));
  }
  for (int t = 1; t <= 2; ++t) EXPECT_NEAR(objective(fam, theta, t), oracle::state_fp(s, t), 1e-12);
}

TEST(Varopt, FiniteDifferences) {
  auto f = [](const std::vector<double>& x) { return 3.0 * x[0] * x[0] - x[0] * x[1] + 0.5 * x[1] * x[1]; };
  const auto g = fd_gradient(f, {1.0, -2.0}, 1e-3);
  EXPECT_NEAR(g[0], 8.0, 1e-9);
  EXPECT_NEAR(g[1], -3.0, 1e-9);
  EXPECT_THROW(fd_gradient(f, {1.0, 1.0}, 0.0), DomainError);

  // Central-difference error is O(h^2) on a smooth objective.
  const auto fam = phase_family(3);
  const std::vector<double> theta = {0.4, 1.9, 5.0};
  const auto coarse = fd_gradient(fam, theta, 2, 1e-2);
  const auto fine = fd_gradient(fam, theta, 2, 5e-3);
  for (std::size_t i = 0; i < theta.size(); ++i) EXPECT_LE(std::abs(coarse[i] - fine[i]), 10 * 1e-4);
}

TEST(Varopt, MinimizeReachesTarget) {
  MinimizeConfig cfg;
  cfg.seed = 3;
  cfg.restarts = 4;
  const auto two = minimize(phase_family(2), 1, cfg);
  EXPECT_NEAR(two.best.value, 0.5, 1e-3);
  const auto four = minimize(phase_family(4), 1, cfg);
  EXPECT_NEAR(four.best.value, 0.5, 1e-3);
  EXPECT_NEAR(four.target, 0.5, 1e-15);
}

TEST(Varopt, TraceIsMonotoneAndDeterministic) {
  MinimizeConfig cfg;
  cfg.seed = 11;
  cfg.restarts = 3;
  cfg.max_iters = 40;
  const auto fam = phase_family(5, true);
  const auto a = minimize(fam, 2, cfg);
  const auto b = minimize(fam, 2, cfg);
  ASSERT_EQ(a.iterates.size(), b.iterates.size());
  for (std::size_t i = 0; i < a.iterates.size(); ++i) EXPECT_EQ(a.iterates[i].value, b.iterates[i].value);
  for (std::size_t i = 1; i < a.iterates.size(); ++i) EXPECT_LE(a.iterates[i].value, a.iterates[i - 1].value);
  EXPECT_GE(a.best.value, a.target - 1e-9);
  EXPECT_EQ(a.restart_values.size(), 3u);
  for (double v : a.restart_values) EXPECT_GE(v, a.best.value);
}

TEST(Varopt, OtherFamilies) {
  ParamFamily sub;
  sub.kind = FamilyKind::SubsetPhases;
  sub.n = 2;
  sub.k = 3;
  sub.subset = {"00", "11"};
  EXPECT_EQ(sub.param_count(), 6u);
  EXPECT_NEAR(objective(sub, std::vector<double>(6, 0.0), 1), 1.0, 1e-12);

  ParamFamily rot;
  rot.kind = FamilyKind::RotationCircuit;
  rot.set_kind = SetKind::Unitary;
  rot.n = 1;
  rot.k = 4;
  EXPECT_EQ(rot.param_count(), 12u);
  MinimizeConfig cfg;
  cfg.restarts = 2;
  cfg.max_iters = 60;
  const auto r = minimize(rot, 1, cfg);
  EXPECT_GE(r.best.value, r.target - 1e-9);
  EXPECT_NEAR(rot.target(1), 1.0, 1e-15);
}

TEST(Varopt, JsonRoundTripAndValidation) {
  auto fam = phase_family(6, true);
  const auto back = family_from_json(family_to_json(fam));
  EXPECT_EQ(back.k, 6u);
  EXPECT_TRUE(back.free_polar);
  EXPECT_THROW(family_from_json(nlohmann::json{{"family", "NOPE"}, {"n", 1}, {"K", 2}}), DomainError);
  EXPECT_THROW(phase_family(2).bind({1.0}), DomainError);
  ParamFamily bad;
  bad.kind = FamilyKind::SubsetPhases;
  bad.subset = {"0", "0"};
  EXPECT_THROW(bad.validate(), DomainError);
  MinimizeConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(minimize(phase_family(2), 1, cfg), DomainError);
}
