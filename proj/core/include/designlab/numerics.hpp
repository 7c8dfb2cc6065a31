#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace designlab {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using DenseState = Eigen::VectorXcd;

enum class SchattenP { One, Two, Infinity };

inline constexpr double kDefaultTol = 1e-9;

// Largest dense object (entry count) any routine will allocate.
inline constexpr std::uint64_t kMaxDenseEntries = std::uint64_t{1} << 24;

double schatten_norm(const DenseOperator& m, SchattenP p);

// Reduced operator on the subsystems listed in `keep` (kept in ascending order).
// Subsystem 0 is the most significant factor.
DenseOperator partial_trace(const DenseOperator& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// perm[j] is the position that input tensor factor j is moved to, so
// P_pi |i_1..i_t> = |i_{pi^-1(1)}..i_{pi^-1(t)}> and P_pi P_sigma = P_{pi o sigma}.
DenseOperator perm_operator(int d, int t, const std::vector<int>& perm);

// (1/t!) sum over S_t of P_pi.
DenseOperator sym_projector(int d, int t);

struct SpanResult {
  std::vector<DenseState> basis;
  int rank = 0;
};

// Modified Gram-Schmidt with one re-orthogonalization pass. Residuals with
// norm below `drop_tol` are treated as dependent.
SpanResult orthonormal_span(const std::vector<DenseState>& vectors, double drop_tol = 1e-10);

// All permutations of {0..t-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int t);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
std::uint64_t factorial(int n);

// d_t = C(d+t-1, t), dimension of the symmetric subspace.
inline std::uint64_t sym_dim(std::uint64_t d, int t) { return binomial(d + t - 1, t); }

// Checked integer power; throws SizeGuardError named `guard` if the result exceeds `limit`.
std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit, const char* guard);

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseState kron(const DenseState& a, const DenseState& b);
DenseOperator tensor_power(const DenseOperator& a, int t);
DenseState tensor_power(const DenseState& a, int t);

bool all_finite(const DenseOperator& m);
bool is_unitary(const DenseOperator& u, double tol = 1e-10);
bool is_density(const DenseOperator& rho, double herm_tol = 1e-12, double trace_tol = 1e-10);
bool is_normalized(const DenseState& v, double tol = 1e-10);

// Max absolute entry of a - b.
double max_abs_diff(const DenseOperator& a, const DenseOperator& b);

}  // namespace designlab
