#pragma once

// Naive reference implementations used as test oracles. Nothing here calls the
// library's simulators or Gram loops.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat Hm() {
  Mat m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}
inline Mat Xm() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat Ym() {
  Mat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Mat Zm() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Mat Pm(double theta) {
  Mat m(2, 2);
  m << 1, 0, 0, std::polar(1.0, theta);
  return m;
}

// Single-qubit operator on qubit q of n (qubit 0 leftmost factor).
inline Mat on(const Mat& g, int q, int n) {
  Mat r = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) r = kron(r, k == q ? g : I2());
  return r;
}

// Permutation matrix of a classical map on n-qubit basis indices.
template <class F>
Mat classical(int n, F map) {
  const std::uint64_t d = std::uint64_t{1} << n;
  Mat r = Mat::Zero(d, d);
  for (std::uint64_t x = 0; x < d; ++x) r(static_cast<Eigen::Index>(map(x)), static_cast<Eigen::Index>(x)) = 1.0;
  return r;
}

inline std::uint64_t bit(std::uint64_t x, int q, int n) { return (x >> (n - 1 - q)) & 1u; }
inline std::uint64_t flip(std::uint64_t x, int q, int n) { return x ^ (std::uint64_t{1} << (n - 1 - q)); }

inline Mat cnot(int c, int t, int n) {
  return classical(n, [=](std::uint64_t x) { return bit(x, c, n) ? flip(x, t, n) : x; });
}
inline Mat toffoli(int a, int b, int t, int n) {
  return classical(n, [=](std::uint64_t x) { return bit(x, a, n) && bit(x, b, n) ? flip(x, t, n) : x; });
}
inline Mat cz(int a, int b, int n) {
  const std::uint64_t d = std::uint64_t{1} << n;
  Mat r = Mat::Identity(d, d);
  for (std::uint64_t x = 0; x < d; ++x)
    if (bit(x, a, n) && bit(x, b, n)) r(x, x) = -1.0;
  return r;
}

inline Vec basis(std::uint64_t x, int n) {
  Vec v = Vec::Zero(std::int64_t{1} << n);
  v(static_cast<Eigen::Index>(x)) = 1.0;
  return v;
}

// Pauli string with base-4 digits (I, X, Y, Z), qubit 0 most significant.
inline Mat pauli(std::uint64_t idx, int n) {
  Mat r = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const auto digit = (idx >> (2 * (n - 1 - q))) & 3u;
    const Mat p[4] = {I2(), Xm(), Ym(), Zm()};
    r = kron(r, p[digit]);
  }
  return r;
}

inline double state_fp(const std::vector<Vec>& s, int t) {
  double acc = 0.0;
  for (const auto& a : s)
    for (const auto& b : s) acc += std::pow(std::norm(a.dot(b)), t);
  return acc / static_cast<double>(s.size() * s.size());
}

inline double unitary_fp(const std::vector<Mat>& u, int t) {
  double acc = 0.0;
  for (const auto& a : u)
    for (const auto& b : u) acc += std::pow(std::norm((a.adjoint() * b).trace()), t);
  return acc / static_cast<double>(u.size() * u.size());
}

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::uint64_t fact(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

// Haar F_t for U(d) as the dimension of the commutant of U^{(x)t}: the rank of
// the Gram matrix Tr(P_pi^dag P_sigma) = d^{cycles(pi^-1 sigma)}.
inline std::uint64_t haar_unitary_fp(int d, int t) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(t);
  for (int i = 0; i < t; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto n = static_cast<Eigen::Index>(perms.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      std::vector<int> inv(t), comp(t);
      for (int i = 0; i < t; ++i) inv[perms[a][i]] = i;
      for (int i = 0; i < t; ++i) comp[i] = inv[perms[b][i]];
      std::vector<bool> seen(t, false);
      int cycles = 0;
      for (int i = 0; i < t; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = comp[j]) seen[j] = true;
      }
      g(a, b) = std::pow(static_cast<double>(d), cycles);
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  lu.setThreshold(1e-9);
  return static_cast<std::uint64_t>(lu.rank());
}

}  // namespace oracle
