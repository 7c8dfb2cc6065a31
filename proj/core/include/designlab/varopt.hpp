#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "designlab/set_descriptor.hpp"

namespace designlab {

enum class FamilyKind { PhaseAngles, SubsetPhases, RotationCircuit };

std::string_view family_name(FamilyKind kind);
FamilyKind family_kind_from_name(std::string_view name);

// Parameterized set of K elements. Angles are taken mod 2 pi.
//   PhaseAngles: K product states on n qubits; qubit q of state j is
//     (|0> + e^{i theta}|1>)/sqrt2, or with free_polar the general state
//     PHASE(phi) H PHASE(beta) H |0> (two angles per qubit).
//   SubsetPhases: K states chi^{-1/2} sum_{x in subset} e^{i theta_{jx}} |x>.
//   RotationCircuit: K copies of `layers` layers of Z-X-Z Euler rotations on
//     every qubit followed by a CZ chain; set_kind picks state or unitary.
struct ParamFamily {
  FamilyKind kind = FamilyKind::PhaseAngles;
  SetKind set_kind = SetKind::State;
  int n = 1;
  std::uint64_t k = 2;
  bool free_polar = false;
  std::vector<std::string> subset;
  int layers = 1;

  void validate() const;
  std::size_t param_count() const;
  SetDescriptor bind(const std::vector<double>& theta) const;
  // max{1/d_t, 1/K} for states, max{F_Haar, d^{2t}/K} for unitaries.
  double target(int t) const;
};

nlohmann::json family_to_json(const ParamFamily& fam);
ParamFamily family_from_json(const nlohmann::json& j);

double objective(const ParamFamily& fam, const std::vector<double>& theta, int t);

// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double h);
std::vector<double> fd_gradient(const ParamFamily& fam, const std::vector<double>& theta, int t, double h);

struct MinimizeConfig {
  int max_iters = 200;
  std::uint64_t seed = 0;
  int restarts = 8;
  double initial_step = 0.5;
  double armijo = 1e-4;
  double shrink = 0.5;
  double fd_step = 1e-5;
  double tol = 1e-6;
  void validate() const;
};

struct OptIterate {
  std::vector<double> theta;
  double value = 0.0;
};

struct OptTrace {
  std::vector<OptIterate> iterates;  // accepted steps of the best restart
  OptIterate best;
  double target = 0.0;
  int best_restart = 0;
  std::vector<double> restart_values;  // final value per restart
  std::string stop_reason;             // "tolerance", "max_iters" or "step"
};

// Gradient descent with Armijo backtracking on the torus, multi-start. Restart r
// draws its initial angles from CounterRng(seed, r); the best final value wins,
// ties going to the lowest restart index.
OptTrace minimize(const ParamFamily& fam, int t, const MinimizeConfig& config);

}  // namespace designlab
