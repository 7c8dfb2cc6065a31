#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "designlab/boolean_function.hpp"
#include "designlab/designs.hpp"
#include "designlab/set_descriptor.hpp"

namespace designlab {

struct GadgetIngredients {
  std::optional<BooleanFunction> f;
  std::optional<std::uint64_t> s_f;
  std::uint64_t k = 0;
  int n = 0;
  int t = 1;
  double base_fp = 0.0;
  double delta0 = 0.0;  // stdes / unides only
};

struct GadgetInstance {
  std::string gadget;  // "sfp", "ufp", "stdes", "unides", "bqp"
  SetDescriptor descriptor;
  double predicted_fp = 0.0;
  GadgetIngredients ingredients;
  // (alpha, beta) for the decision gadgets, (delta, delta') for the design gadgets.
  std::optional<std::pair<double, double>> thresholds;
  // bqp only: |<0^m 1|V_x|0^{m+1}>| and the measured probability of qubit 0.
  std::optional<double> q1_amplitude;
  std::optional<double> q1_measured;
};

inline constexpr int kMaxSfpQubits = 12;
inline constexpr int kMaxUfpQubits = 10;

// {|f>, |p>} u {|phi_j>|1>} on n = f.n_vars + 2 qubits with
// |f> = 2^{-(n-2)/2} sum_x |x>|f(x)>|0> and |p> = |+>^{n-2}|1>|0>.
// `base` is a state set on n-1 qubits. A supplied base_fp is re-verified
// against the Gram loop when the base is small enough.
GadgetInstance sfp_gadget(const BooleanFunction& f, const SetDescriptor& base, int t,
                          std::optional<double> base_fp = std::nullopt);

// {U_f, U_p} u {V_j (x) I} with U_w = (I - 2|w><w|) (x) Z on n = f.n_vars + 2 qubits.
GadgetInstance ufp_gadget(const BooleanFunction& f, const SetDescriptor& base, int t,
                          std::optional<double> base_fp = std::nullopt);

// Design-problem gadgets: f over n-1 variables, base is a (delta0-approximate)
// design on n qubits, |f> = 2^{-(n-1)/2} sum_x |x>|f(x)>, |p> = |+>^{n-1}|1>.
// predicted_fp is LB(s(f)); thresholds hold (delta, delta').
GadgetInstance stdes_gadget(const BooleanFunction& f, const SetDescriptor& base, int t,
                            double delta0 = 0.0);
GadgetInstance unides_gadget(const BooleanFunction& f, const SetDescriptor& base, int t,
                             double delta0 = 0.0);

// Descriptor part of the sfp/ufp/stdes/unides gadgets ("gadget:<name>" resolvers).
SetDescriptor gadget_descriptor(const std::string& name, const BooleanFunction& f, const SetDescriptor& base);
SetDescriptor bqp_descriptor(const Circuit& ux, std::uint64_t k);

// F = (1 - 2/K)^2 F_base + (2/K^2)[1 + (s/2^{n-2})^{2t}]
double sfp_prediction(int n, std::uint64_t k, int t, double base_fp, double s);
// g_t(x) = (2^n - 8 + 2^{7-2n} x^2)^{2t}
double ufp_g(int n, int t, double x);
// F = 2^{2t}(1 - 2/K)^2 F_V + (2/K^2)[2^{2nt} + g_t(s)]
double ufp_prediction(int n, std::uint64_t k, int t, double base_fp, double s);

enum class ThresholdProblem { SFP, UFP, StDes, UniDes };

struct MajsatThresholds {
  ThresholdProblem problem;
  int n = 0;
  int t = 1;
  std::uint64_t k = 0;
  double base_fp = 0.0;
  double delta0 = 0.0;
  // SFP / UFP
  double alpha = 0.0;
  double beta = 0.0;
  double gap = 0.0;
  double gap_lower_bound = 0.0;  // SFP only: t / (2^{2t-1} K^2 (2^{n-4} + t))
  // StDes / UniDes
  double delta = 0.0;
  double delta_prime = 0.0;
  std::function<double(double)> lb;
  std::function<double(double)> ub;
  // Smallest integer s with s >= cut counts as a "majority" instance.
  std::uint64_t cut = 0;
};

// Promise thresholds of the MAJ-SAT reductions. For SFP/UFP, base_fp is the
// frame potential of the padded base set and the cut is 2^{n-3}. For
// StDes/UniDes the base is a delta0-approximate design on n qubits and the cut
// is 2^{n-2}; delta, delta' follow from LB(2^{n-2}-2/3) and UB(2^{n-2}-1/3).
MajsatThresholds majsat_thresholds(ThresholdProblem problem, int t, int n, std::uint64_t k,
                                   double base_fp, double delta0 = 0.0);

// V_x = (U_x^dag (x) H) CZ_{0,m} (U_x (x) H); states |v_j> = V_x|0^{m+1}>|phi_j>
// and |a_j> = |0^m>|1>|phi_j>, j = 1..K, in that order.
GadgetInstance bqp_gadget(const Circuit& ux, int t, std::uint64_t k);
double bqp_prediction(int t, double q1);
Circuit bqp_vx(const Circuit& ux);

struct SubsetCount {
  std::uint64_t enumerated = 0;   // direct count of f_A = 1
  double via_frame_potential = 0.0;  // chi^{2t} K^2 (1 - F_t) / 2
  double frame_potential = 0.0;
};

// s(f_A) computed by enumerating every (j, k, x_1..x_{2t}) and from the frame
// potential; throws VerificationError if they differ by more than 0.5.
SubsetCount subset_phase_count(const SubsetPhaseSpec& spec, int t);

// Gram-loop check of a gadget; throws VerificationError beyond `tol`.
double verify_gadget(const GadgetInstance& g, double tol = 1e-9);

}  // namespace designlab
