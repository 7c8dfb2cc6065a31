#include "designlab/frame_potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/parallel.hpp"

namespace designlab {

namespace {

void require_t(int t) {
  if (t < 1) throw DomainError("degree t must be at least 1");
}

void require_kind(const SetDescriptor& s, SetKind kind, const char* op) {
  if (s.kind != kind)
    throw DomainError(std::string(op) + ": expected a " + std::string(kind_name(kind)) + " set");
}

void require_gram(const SetDescriptor& s) {
  require_size(s.cardinality <= kMaxGramCardinality, "Gram loop K <= 2^14",
               "K = " + std::to_string(s.cardinality));
}

// d^e as a double, exact for the desk-scale range.
double dpow(std::uint64_t d, int e) { return std::pow(static_cast<double>(d), e); }

void require_moment_t(int t) {
  require_t(t);
  require_size(t <= kMaxMomentT, "moment operator t <= 4", "t = " + std::to_string(t));
}

// Column j is psi_j^{(x)t}.
Eigen::MatrixXcd tensor_power_columns(const SetDescriptor& s, int t) {
  const Eigen::MatrixXcd states = materialize_states(s);
  const auto dt = static_cast<Eigen::Index>(checked_pow(s.dim(), t, kMaxMomentDim, "state moment d^t <= 2^12"));
  Eigen::MatrixXcd out(dt, states.cols());
  parallel_for(static_cast<std::size_t>(states.cols()), [&](std::size_t j) {
    out.col(static_cast<Eigen::Index>(j)) = tensor_power(DenseState(states.col(static_cast<Eigen::Index>(j))), t);
  });
  return out;
}

}  // namespace

double gram_frame_potential(const Eigen::MatrixXcd& cols, int t) {
  require_t(t);
  const auto k = static_cast<std::size_t>(cols.cols());
  if (k == 0) throw DomainError("frame potential of an empty set");
  std::vector<double> rows(k, 0.0);
  parallel_for(k, [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto rest = static_cast<Eigen::Index>(k - i);
    const Eigen::VectorXcd g = cols.rightCols(rest).adjoint() * cols.col(ii);
    double acc = std::pow(std::norm(g(0)), t);
    double off = 0.0;
    for (Eigen::Index j = 1; j < rest; ++j) off += std::pow(std::norm(g(j)), t);
    rows[i] = acc + 2.0 * off;
  });
  const double kk = static_cast<double>(k);
  return tree_sum(rows) / (kk * kk);
}

double state_frame_potential(const SetDescriptor& s, int t) {
  require_kind(s, SetKind::State, "state_frame_potential");
  require_t(t);
  require_gram(s);
  return gram_frame_potential(materialize_states(s), t);
}

double unitary_frame_potential(const SetDescriptor& u, int t) {
  require_kind(u, SetKind::Unitary, "unitary_frame_potential");
  require_t(t);
  require_gram(u);
  return gram_frame_potential(materialize_unitaries(u), t);
}

double frame_potential(const SetDescriptor& s, int t) {
  return s.kind == SetKind::State ? state_frame_potential(s, t) : unitary_frame_potential(s, t);
}

DenseOperator state_moment(const SetDescriptor& s, int t) {
  require_kind(s, SetKind::State, "state_moment");
  require_moment_t(t);
  const Eigen::MatrixXcd x = tensor_power_columns(s, t);
  return (x * x.adjoint()) / static_cast<double>(s.cardinality);
}

DenseOperator haar_state_moment(int d, int t) {
  require_moment_t(t);
  checked_pow(d, t, kMaxMomentDim, "state moment d^t <= 2^12");
  return sym_projector(d, t) / static_cast<double>(sym_dim(d, t));
}

DenseOperator unitary_moment(const SetDescriptor& u, int t) {
  require_kind(u, SetKind::Unitary, "unitary_moment");
  require_moment_t(t);
  const auto dim = static_cast<Eigen::Index>(checked_pow(u.dim(), 2 * t, kMaxMomentDim, "unitary moment d^2t <= 2^12"));
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (std::uint64_t j = 1; j <= u.cardinality; ++j) {
    const DenseOperator ut = tensor_power(circuit_unitary(u.resolve(j)), t);
    m += kron(ut, DenseOperator(ut.conjugate()));
  }
  return m / static_cast<double>(u.cardinality);
}

SpanResult haar_unitary_moment_basis(int d, int t) {
  require_moment_t(t);
  if (d < 2) throw DomainError("haar_unitary_moment: d must be at least 2");
  checked_pow(d, 2 * t, kMaxMomentDim, "unitary moment d^2t <= 2^12");
  std::vector<DenseState> vecs;
  for (const auto& p : all_permutations(t)) {
    const DenseOperator pm = perm_operator(d, t, p);
    DenseState v(pm.size());
    for (Eigen::Index r = 0; r < pm.rows(); ++r)
      for (Eigen::Index c = 0; c < pm.cols(); ++c) v(r * pm.cols() + c) = pm(r, c);
    vecs.push_back(std::move(v));
  }
  return orthonormal_span(vecs);
}

DenseOperator haar_unitary_moment(int d, int t) {
  const SpanResult span = haar_unitary_moment_basis(d, t);
  const auto dim = span.basis.front().size();
  Eigen::MatrixXcd b(dim, span.rank);
  for (int k = 0; k < span.rank; ++k) b.col(k) = span.basis[k];
  return b * b.adjoint();
}

DesignDistance state_design_distance(const SetDescriptor& s, int t) {
  const DenseOperator diff = state_moment(s, t) - haar_state_moment(static_cast<int>(s.dim()), t);
  return {SetKind::State, t,
          static_cast<double>(sym_dim(s.dim(), t)) * schatten_norm(diff, SchattenP::Infinity)};
}

DesignDistance unitary_design_distance(const SetDescriptor& u, int t) {
  const DenseOperator diff = unitary_moment(u, t) - haar_unitary_moment(static_cast<int>(u.dim()), t);
  return {SetKind::Unitary, t, schatten_norm(diff, SchattenP::One)};
}

bool distance_feasible(const SetDescriptor& s, int t) {
  if (t < 1 || t > kMaxMomentT) return false;
  const double d = static_cast<double>(s.dim());
  const double k = static_cast<double>(s.cardinality);
  if (s.kind == SetKind::State) {
    const double dt = std::pow(d, t);
    return dt <= static_cast<double>(kMaxMomentDim) && k * dt * dt <= 0x1p31 &&
           s.cardinality <= kMaxGramCardinality;
  }
  // Trace-norm SVD cost grows as d^{6t}; stay at or below 1024 x 1024.
  const double d2t = std::pow(d, 2 * t);
  return s.n_qubits <= kMaxUnitaryQubits && d2t <= 1024.0 && k * d2t * d2t <= 0x1p31;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "CERTIFIED";
    case Verdict::Refuted:
      return "REFUTED";
    default:
      return "INCONCLUSIVE";
  }
}

double haar_frame_potential(SetKind kind, std::uint64_t d, int t) {
  if (kind == SetKind::State) return 1.0 / static_cast<double>(sym_dim(d, t));
  return static_cast<double>(haar_unitary_fp(d, t));
}

std::pair<double, double> frame_potential_bounds(SetKind kind, std::uint64_t d, std::uint64_t k, int t) {
  const double kk = static_cast<double>(k);
  if (kind == SetKind::State)
    return {std::max(haar_frame_potential(kind, d, t), 1.0 / kk), 1.0};
  const double top = dpow(d, 2 * t);
  return {std::max(haar_frame_potential(kind, d, t), top / kk), top};
}

void check_bounds(SetKind kind, std::uint64_t d, std::uint64_t k, int t, double value, double tol) {
  const auto [lo, hi] = frame_potential_bounds(kind, d, k, t);
  const double slack = tol * std::max(1.0, std::abs(value));
  if (!(value >= lo - slack && value <= hi + slack))
    throw VerificationError("frame potential " + std::to_string(value) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
}

MomentReport certify_value(SetKind kind, std::uint64_t d, std::uint64_t k, int t, double value,
                           double delta, double delta_prime, double tol) {
  require_t(t);
  if (!(delta >= 0.0)) throw DomainError("certify: delta must be nonnegative");
  if (!(delta_prime > delta)) throw DomainError("certify: need delta' > delta");
  check_bounds(kind, d, k, t, value, tol);

  MomentReport r;
  r.kind = kind;
  r.t = t;
  r.k = k;
  r.d = d;
  r.value = value;
  r.haar_value = haar_frame_potential(kind, d, t);
  std::tie(r.lower_bound, r.upper_bound) = frame_potential_bounds(kind, d, k, t);
  r.delta = delta;
  r.delta_prime = delta_prime;
  if (kind == SetKind::State) {
    const double dt = static_cast<double>(sym_dim(d, t));
    r.certify_threshold = r.haar_value + delta * delta / (dt * dt);
    r.refute_threshold = r.haar_value + delta_prime * delta_prime / dt;
  } else {
    r.certify_threshold = r.haar_value + delta * delta / dpow(d, 2 * t);
    r.refute_threshold = r.haar_value + delta_prime * delta_prime;
  }
  const double slack = tol * std::max(1.0, std::abs(value));
  if (value <= r.certify_threshold + slack)
    r.bound_verdict = Verdict::Certified;
  else if (value > r.refute_threshold + slack)
    r.bound_verdict = Verdict::Refuted;
  else
    r.bound_verdict = Verdict::Inconclusive;
  r.verdict = r.bound_verdict;
  return r;
}

MomentReport certify(const SetDescriptor& s, int t, double delta, double delta_prime,
                     const CertifyOptions& options) {
  const double value = frame_potential(s, t);
  MomentReport r = certify_value(s.kind, s.dim(), s.cardinality, t, value, delta, delta_prime, options.tol);
  if (!options.use_distance || !distance_feasible(s, t)) return r;

  const double dist = s.kind == SetKind::State ? state_design_distance(s, t).distance
                                               : unitary_design_distance(s, t).distance;
  r.distance = dist;
  if (dist <= delta + options.tol)
    r.verdict = Verdict::Certified;
  else if (dist > delta_prime + options.tol)
    r.verdict = Verdict::Refuted;
  else
    r.verdict = Verdict::Inconclusive;
  // The bound verdicts are sound, so they must agree with the exact distance.
  if (r.bound_verdict == Verdict::Certified && r.verdict != Verdict::Certified)
    throw VerificationError("certify: frame-potential bound certified but distance " + std::to_string(dist) +
                            " exceeds delta");
  if (r.bound_verdict == Verdict::Refuted && r.verdict != Verdict::Refuted && dist <= delta_prime - options.tol)
    throw VerificationError("certify: frame-potential bound refuted but distance " + std::to_string(dist) +
                            " is within delta'");
  return r;
}

}  // namespace designlab
