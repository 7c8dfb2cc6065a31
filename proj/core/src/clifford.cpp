#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <tuple>

#include "designlab/designs.hpp"
#include "designlab/errors.hpp"

namespace designlab {

namespace {

using Key = std::vector<long long>;

// Unitary modulo global phase: the first entry (row-major) with magnitude
// above 1e-9 is rotated to the positive real axis, then entries are rounded
// to a 1e-6 grid.
Key phase_key(const DenseOperator& u) {
  cplx rot = 1.0;
  bool found = false;
  for (Eigen::Index r = 0; r < u.rows() && !found; ++r)
    for (Eigen::Index c = 0; c < u.cols() && !found; ++c)
      if (std::abs(u(r, c)) > 1e-9) {
        rot = std::conj(u(r, c)) / std::abs(u(r, c));
        found = true;
      }
  Key key;
  key.reserve(static_cast<std::size_t>(2 * u.size()));
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      const cplx z = u(r, c) * rot;
      key.push_back(std::llround(z.real() * 1e6));
      key.push_back(std::llround(z.imag() * 1e6));
    }
  return key;
}

DenseOperator pauli_matrix(int n, std::uint64_t index) {
  Circuit c(n);
  static constexpr GateKind kinds[] = {GateKind::X, GateKind::Y, GateKind::Z};
  for (int q = 0; q < n; ++q) {
    const auto digit = (index >> (2 * (n - 1 - q))) & 3u;
    if (digit) c.add(Gate::single(kinds[digit - 1], q));
  }
  return circuit_unitary(c);
}

// Sort key: images of X_0, Z_0, X_1, Z_1, ... as packed (x, z) bits, then signs.
std::vector<int> tableau_key(int n, const DenseOperator& u, const std::vector<DenseOperator>& paulis) {
  const double d = static_cast<double>(u.rows());
  std::vector<int> images, signs;
  for (int q = 0; q < n; ++q) {
    for (int kind : {1, 3}) {  // X, Z on qubit q
      const std::uint64_t g = static_cast<std::uint64_t>(kind) << (2 * (n - 1 - q));
      const DenseOperator conj = u * paulis[g] * u.adjoint();
      bool found = false;
      for (std::uint64_t p = 0; p < paulis.size(); ++p) {
        const cplx v = (paulis[p].adjoint() * conj).trace() / d;
        if (std::abs(std::abs(v) - 1.0) < 1e-8) {
          int xbits = 0, zbits = 0;
          for (int k = 0; k < n; ++k) {
            const auto digit = (p >> (2 * (n - 1 - k))) & 3u;
            const int x = digit == 1 || digit == 2;
            const int z = digit == 2 || digit == 3;
            xbits = (xbits << 1) | x;
            zbits = (zbits << 1) | z;
          }
          images.push_back((xbits << n) | zbits);
          signs.push_back(v.real() > 0 ? 0 : 1);
          found = true;
          break;
        }
      }
      if (!found) throw VerificationError("clifford enumeration: element does not normalize the Pauli group");
    }
  }
  images.insert(images.end(), signs.begin(), signs.end());
  return images;
}

std::vector<Circuit> enumerate(int n) {
  std::vector<Gate> gens;
  for (int q = 0; q < n; ++q) gens.push_back(Gate::single(GateKind::H, q));
  for (int q = 0; q < n; ++q) gens.push_back(Gate::single(GateKind::S, q));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) gens.push_back(Gate::cnot(a, b));

  struct Node {
    Circuit circuit;
    DenseOperator u;
  };
  std::vector<Node> nodes;
  std::map<Key, std::size_t> seen;
  Circuit id(n);
  DenseOperator u0 = circuit_unitary(id);
  seen.emplace(phase_key(u0), 0);
  nodes.push_back({id, u0});
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (const auto& g : gens) {
      Circuit next = nodes[head].circuit;
      next.add(g);
      DenseOperator u = circuit_unitary(next);
      auto key = phase_key(u);
      if (seen.emplace(std::move(key), nodes.size()).second) nodes.push_back({std::move(next), std::move(u)});
    }
  }

  std::vector<DenseOperator> paulis;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << (2 * n)); ++p) paulis.push_back(pauli_matrix(n, p));
  std::vector<std::pair<std::vector<int>, std::size_t>> order;
  order.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) order.emplace_back(tableau_key(n, nodes[i].u, paulis), i);
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i].first == order[i - 1].first)
      throw VerificationError("clifford enumeration: duplicate tableau");

  std::vector<Circuit> out;
  out.reserve(order.size());
  for (const auto& [key, idx] : order) out.push_back(std::move(nodes[idx].circuit));
  return out;
}

}  // namespace

const std::vector<Circuit>& clifford_circuits(int n) {
  if (n != 1 && n != 2) throw DomainError("clifford_circuits: only n in {1, 2} is supported");
  static std::once_flag flags[2];
  static std::vector<Circuit> tables[2];
  std::call_once(flags[n - 1], [n] { tables[n - 1] = enumerate(n); });
  return tables[n - 1];
}

}  // namespace designlab
