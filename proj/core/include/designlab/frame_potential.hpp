#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "designlab/numerics.hpp"
#include "designlab/set_descriptor.hpp"

namespace designlab {

// The Gram loop is K^2; K above this is rejected.
inline constexpr std::uint64_t kMaxGramCardinality = std::uint64_t{1} << 14;
// Moment operators have d^{2t} x d^{2t} entries (unitary) or d^t x d^t (state).
inline constexpr std::uint64_t kMaxMomentDim = std::uint64_t{1} << 12;
inline constexpr int kMaxMomentT = 4;

// (1/K^2) sum_{i,j} |<c_i, c_j>|^{2t} over the columns of `cols`. Rows of the
// Gram matrix are reduced sequentially, then combined by a pairwise tree, so
// the value does not depend on the thread count.
double gram_frame_potential(const Eigen::MatrixXcd& cols, int t);

double state_frame_potential(const SetDescriptor& s, int t);
double unitary_frame_potential(const SetDescriptor& u, int t);
double frame_potential(const SetDescriptor& s, int t);

DenseOperator state_moment(const SetDescriptor& s, int t);
DenseOperator haar_state_moment(int d, int t);
DenseOperator unitary_moment(const SetDescriptor& u, int t);

// Orthonormal basis of span{vec(P_pi)} in (C^d)^{(x)t} (x) (C^d)^{(x)t}.
SpanResult haar_unitary_moment_basis(int d, int t);
DenseOperator haar_unitary_moment(int d, int t);

struct DesignDistance {
  SetKind kind;
  int t;
  double distance;
};

// d_t * || E[psi^{(x)t}] - Pi_sym/d_t ||_inf
DesignDistance state_design_distance(const SetDescriptor& s, int t);
// || M_U - M_H ||_1
DesignDistance unitary_design_distance(const SetDescriptor& u, int t);

// Whether the exact distance of `s` at degree t fits the moment guards.
bool distance_feasible(const SetDescriptor& s, int t);

enum class Verdict { Certified, Refuted, Inconclusive };
std::string_view verdict_name(Verdict v);

struct CertifyOptions {
  double tol = kDefaultTol;
  // Replace the bound verdict by the exact-distance verdict when feasible.
  bool use_distance = true;
};

struct MomentReport {
  SetKind kind = SetKind::State;
  int t = 1;
  std::uint64_t k = 0;
  std::uint64_t d = 0;
  double value = 0.0;
  double haar_value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double delta = 0.0;
  double delta_prime = 0.0;
  // Certified: F <= haar + delta^2/d_t^2 (state) or haar + delta^2/d^{2t} (unitary).
  // Refuted: F > haar + delta'^2/d_t (state) or haar + delta'^2 (unitary).
  double certify_threshold = 0.0;
  double refute_threshold = 0.0;
  Verdict bound_verdict = Verdict::Inconclusive;
  std::optional<double> distance;
  Verdict verdict = Verdict::Inconclusive;
};

// Frame-potential bounds: [max(1/d_t, 1/K), 1] for states and
// [max(F_H, d^{2t}/K), d^{2t}] for unitaries.
std::pair<double, double> frame_potential_bounds(SetKind kind, std::uint64_t d, std::uint64_t k, int t);
double haar_frame_potential(SetKind kind, std::uint64_t d, int t);

// Throws VerificationError if `value` lies outside the bounds.
void check_bounds(SetKind kind, std::uint64_t d, std::uint64_t k, int t, double value,
                  double tol = kDefaultTol);

MomentReport certify(const SetDescriptor& s, int t, double delta, double delta_prime,
                     const CertifyOptions& options = {});
// Same logic on a precomputed frame potential; no distance override.
MomentReport certify_value(SetKind kind, std::uint64_t d, std::uint64_t k, int t, double value,
                           double delta, double delta_prime, double tol = kDefaultTol);

}  // namespace designlab
