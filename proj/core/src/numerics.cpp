#include "designlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "designlab/errors.hpp"

namespace designlab {

double schatten_norm(const DenseOperator& m, SchattenP p) {
  if (!all_finite(m)) throw DomainError("schatten_norm: non-finite entry");
  if (m.size() == 0) return 0.0;
  if (p == SchattenP::Two) return m.norm();
  Eigen::BDCSVD<DenseOperator> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (p == SchattenP::Infinity) return s.size() ? s.maxCoeff() : 0.0;
  return s.sum();
}

DenseOperator partial_trace(const DenseOperator& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  if (m.rows() != m.cols()) throw DomainError("partial_trace: operator is not square");
  std::int64_t total = 1;
  for (int d : dims) {
    if (d < 1) throw DomainError("partial_trace: subsystem dimension must be positive");
    total *= d;
  }
  if (total != m.rows()) throw DomainError("partial_trace: dims do not match operator size");
  const int ns = static_cast<int>(dims.size());
  std::vector<bool> kept(ns, false);
  for (int k : keep) {
    if (k < 0 || k >= ns) throw DomainError("partial_trace: keep index out of range");
    if (kept[k]) throw DomainError("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  std::vector<std::int64_t> stride(ns, 1);
  for (int i = ns - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> keep_sys, trace_sys;
  for (int i = 0; i < ns; ++i) (kept[i] ? keep_sys : trace_sys).push_back(i);

  auto offsets = [&](const std::vector<int>& systems) {
    std::vector<std::int64_t> out{0};
    for (int s : systems) {
      std::vector<std::int64_t> next;
      next.reserve(out.size() * dims[s]);
      for (std::int64_t base : out)
        for (int v = 0; v < dims[s]; ++v) next.push_back(base + v * stride[s]);
      out.swap(next);
    }
    return out;
  };
  const auto kept_off = offsets(keep_sys);
  const auto traced_off = offsets(trace_sys);

  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  DenseOperator out = DenseOperator::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (std::int64_t o : traced_off) acc += m(kept_off[r] + o, kept_off[c] + o);
      out(r, c) = acc;
    }
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit, const char* guard) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && v > limit / base)
      throw SizeGuardError(guard, std::to_string(base) + "^" + std::to_string(exp) +
                                      " exceeds " + std::to_string(limit));
    v *= base;
  }
  if (v > limit)
    throw SizeGuardError(guard, std::to_string(base) + "^" + std::to_string(exp) + " exceeds " +
                                    std::to_string(limit));
  return v;
}

DenseOperator perm_operator(int d, int t, const std::vector<int>& perm) {
  if (t < 1 || d < 2) throw DomainError("perm_operator: need t >= 1 and d >= 2");
  if (static_cast<int>(perm.size()) != t) throw DomainError("perm_operator: permutation length != t");
  std::vector<int> inv(t, -1);
  for (int j = 0; j < t; ++j) {
    if (perm[j] < 0 || perm[j] >= t || inv[perm[j]] != -1)
      throw DomainError("perm_operator: not a permutation");
    inv[perm[j]] = j;
  }
  const auto dim = checked_pow(d, t, std::uint64_t{1} << 24, "perm_operator d^t <= 2^24");
  checked_pow(d, 2 * t, kMaxDenseEntries, "dense entries d^2t <= 2^24");

  DenseOperator p = DenseOperator::Zero(dim, dim);
  std::vector<int> digits(t), out_digits(t);
  for (std::uint64_t in = 0; in < dim; ++in) {
    std::uint64_t r = in;
    for (int k = t - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(r % d);
      r /= d;
    }
    for (int k = 0; k < t; ++k) out_digits[k] = digits[inv[k]];
    std::uint64_t out = 0;
    for (int k = 0; k < t; ++k) out = out * d + out_digits[k];
    p(out, in) = 1.0;
  }
  return p;
}

std::vector<std::vector<int>> all_permutations(int t) {
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

DenseOperator sym_projector(int d, int t) {
  const auto perms = all_permutations(t);
  DenseOperator acc;
  for (const auto& p : perms) {
    if (acc.size() == 0)
      acc = perm_operator(d, t, p);
    else
      acc += perm_operator(d, t, p);
  }
  return acc / static_cast<double>(perms.size());
}

SpanResult orthonormal_span(const std::vector<DenseState>& vectors, double drop_tol) {
  SpanResult out;
  if (vectors.empty()) return out;
  const auto dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DomainError("orthonormal_span: vectors differ in dimension");
    DenseState r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out.basis) r -= q * q.dot(r);
    const double nr = r.norm();
    if (nr < drop_tol) continue;
    out.basis.push_back(r / nr);
  }
  out.rank = static_cast<int>(out.basis.size());
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw DomainError("factorial: argument out of range");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseState kron(const DenseState& a, const DenseState& b) {
  DenseState out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DenseOperator tensor_power(const DenseOperator& a, int t) {
  if (t < 0) throw DomainError("tensor_power: negative power");
  checked_pow(static_cast<std::uint64_t>(a.size()), t, kMaxDenseEntries, "dense entries <= 2^24");
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (int i = 0; i < t; ++i) out = kron(out, a);
  return out;
}

DenseState tensor_power(const DenseState& a, int t) {
  if (t < 0) throw DomainError("tensor_power: negative power");
  checked_pow(static_cast<std::uint64_t>(a.size()), t, std::uint64_t{1} << 24,
              "state dimension <= 2^24");
  DenseState out = DenseState::Ones(1);
  for (int i = 0; i < t; ++i) out = kron(out, a);
  return out;
}

bool all_finite(const DenseOperator& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_unitary(const DenseOperator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const DenseOperator g = u.adjoint() * u - DenseOperator::Identity(u.rows(), u.cols());
  return schatten_norm(g, SchattenP::Infinity) <= tol;
}

bool is_density(const DenseOperator& rho, double herm_tol, double trace_tol) {
  if (rho.rows() != rho.cols()) return false;
  if (max_abs_diff(rho, rho.adjoint()) > herm_tol) return false;
  return std::abs(rho.trace() - cplx(1.0)) <= trace_tol;
}

bool is_normalized(const DenseState& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace designlab
