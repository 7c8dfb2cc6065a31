#include "designlab/path_sum.hpp"

#include <cmath>
#include <string>

#include "designlab/errors.hpp"

namespace designlab {

namespace {

void check_perm(const QubitPerm& perm, int width) {
  if (static_cast<int>(perm.size()) != width)
    throw DomainError("path sum: observable permutation has " + std::to_string(perm.size()) +
                      " entries for " + std::to_string(width) + " qubits");
  std::vector<bool> seen(width, false);
  for (int p : perm) {
    if (p < 0 || p >= width || seen[p]) throw DomainError("path sum: observable is not a qubit permutation");
    seen[p] = true;
  }
}

std::uint64_t bit_of(std::uint64_t x, int q, int width) { return (x >> (width - 1 - q)) & 1u; }

std::uint64_t apply_perm(std::uint64_t x, const QubitPerm& perm, int width) {
  std::uint64_t y = 0;
  for (int q = 0; q < width; ++q)
    if (bit_of(x, q, width)) y |= std::uint64_t{1} << (width - 1 - perm[q]);
  return y;
}

// <y|G|x> for a rescaled-H or classical reversible gate; always -1, 0 or 1.
int entry(const Gate& g, std::uint64_t y, std::uint64_t x, int width) {
  switch (g.kind) {
    case GateKind::H:
    case GateKind::RESCALED_H: {
      const int q = g.targets[0];
      const std::uint64_t mask = std::uint64_t{1} << (width - 1 - q);
      if ((x & ~mask) != (y & ~mask)) return 0;
      return (bit_of(x, q, width) & bit_of(y, q, width)) ? -1 : 1;
    }
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::TOFFOLI: {
      bool fire = true;
      for (std::size_t i = 0; i + 1 < g.targets.size(); ++i) fire = fire && bit_of(x, g.targets[i], width);
      std::uint64_t image = x;
      if (fire) image ^= std::uint64_t{1} << (width - 1 - g.targets.back());
      return image == y ? 1 : 0;
    }
    default:
      throw DomainError("path sum: gate " + std::string(gate_name(g.kind)) + " is not H or Toffoli");
  }
}

}  // namespace

PathSumResult path_sum_count(const Circuit& c, const QubitPerm& perm) {
  c.validate();
  const int w = c.n_qubits;
  check_perm(perm, w);
  PathSumResult r;
  r.gates = static_cast<int>(c.gates.size());
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::H || g.kind == GateKind::RESCALED_H) ++r.h;
    (void)entry(g, 0, 0, w);
  }
  require_size(2 * r.gates * w <= kMaxPathBits, "path sum L = 2 M width <= 20",
               "M = " + std::to_string(r.gates) + ", width = " + std::to_string(w));
  r.L = 2 * r.gates * w;
  const int half = r.L / 2;
  const std::uint64_t paths = std::uint64_t{1} << half;
  const std::uint64_t last_mask = (std::uint64_t{1} << w) - 1;

  // g(alpha) and alpha_M for every path; alpha_m occupies bits [w(m-1), w m).
  std::vector<int> g(paths);
  std::vector<std::uint64_t> end(paths);
  for (std::uint64_t a = 0; a < paths; ++a) {
    int prod = 1;
    std::uint64_t prev = 0;
    for (int m = 0; m < r.gates && prod != 0; ++m) {
      const std::uint64_t cur = (a >> (w * m)) & last_mask;
      prod *= entry(c.gates[m], cur, prev, w);
      prev = cur;
    }
    g[a] = prod;
    end[a] = r.gates == 0 ? 0 : (a >> (w * (r.gates - 1))) & last_mask;
  }

  for (std::uint64_t a = 0; a < paths; ++a)
    for (std::uint64_t b = 0; b < paths; ++b) {
      const int hbar = end[b] == apply_perm(end[a], perm, w) ? 1 : 0;
      const int v = g[a] * g[b] * hbar;
      for (int bit = 0; bit <= 1; ++bit)
        if (v >= bit) ++r.s_f;
    }
  r.reconstructed = std::ldexp(static_cast<double>(r.s_f) - std::ldexp(1.0, r.L), -r.h);
  return r;
}

double path_sum_direct(const Circuit& c, const QubitPerm& perm) {
  c.validate();
  check_perm(perm, c.n_qubits);
  Circuit plain(c.n_qubits);
  for (auto g : c.gates) {
    if (g.kind == GateKind::RESCALED_H) g.kind = GateKind::H;
    plain.add(std::move(g));
  }
  const DenseState psi = simulate_state(plain);
  cplx acc = 0.0;
  for (Eigen::Index x = 0; x < psi.size(); ++x) {
    const auto y = static_cast<Eigen::Index>(apply_perm(static_cast<std::uint64_t>(x), perm, c.n_qubits));
    acc += std::conj(psi(y)) * psi(x);
  }
  return acc.real();
}

DoubledEncoding doubled_encoding_circuit(const Circuit& encoder, int kappa, int n, int t) {
  const int half = kappa + n * t;
  if (kappa < 0 || n < 1 || t < 1) throw DomainError("doubled encoding: need kappa >= 0, n >= 1, t >= 1");
  if (encoder.n_qubits != half)
    throw DomainError("doubled encoding: encoder must act on kappa + n t = " + std::to_string(half) + " qubits");
  DoubledEncoding d;
  d.circuit = Circuit(2 * half + 1);
  append_shifted(d.circuit, encoder, 0);
  append_shifted(d.circuit, encoder, half);
  d.perm.resize(2 * half + 1);
  for (int q = 0; q < 2 * half + 1; ++q) d.perm[q] = q;
  for (int q = 0; q < kappa; ++q) {
    d.perm[q] = half + q;
    d.perm[half + q] = q;
  }
  return d;
}

}  // namespace designlab
