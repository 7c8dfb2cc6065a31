#include "designlab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "designlab/errors.hpp"

namespace designlab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;  // 0 = any
};

constexpr KindInfo kKinds[] = {
    {GateKind::H, "H", 1},        {GateKind::S, "S", 1},
    {GateKind::T, "T", 1},        {GateKind::X, "X", 1},
    {GateKind::Y, "Y", 1},        {GateKind::Z, "Z", 1},
    {GateKind::CZ, "CZ", 2},      {GateKind::CNOT, "CNOT", 2},
    {GateKind::TOFFOLI, "TOFFOLI", 3}, {GateKind::PHASE, "PHASE", 1},
    {GateKind::RESCALED_H, "RESCALED_H", 1}, {GateKind::MATRIX, "MATRIX", 0},
    {GateKind::PREPARE, "PREPARE", 0},       {GateKind::REFLECT, "REFLECT", 0},
};

const KindInfo& info(GateKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw DomainError("unknown gate kind");
}

bool has_payload(GateKind k) {
  return k == GateKind::MATRIX || k == GateKind::PREPARE || k == GateKind::REFLECT;
}

std::vector<cplx> normalized(std::vector<cplx> v, const char* what) {
  double n2 = 0.0;
  for (const auto& z : v) n2 += std::norm(z);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError(std::string(what) + ": zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

// Householder data for PREPARE: U = e^{i phi}(I - 2 w w^dag), U e_0 = a.
struct Householder {
  cplx phase;
  std::vector<cplx> w;  // empty means U = phase * I
};

Householder householder_for(const std::vector<cplx>& a) {
  const double phi = std::abs(a[0]) > 0.0 ? std::arg(a[0]) : 0.0;
  const cplx rot = std::polar(1.0, -phi);
  std::vector<cplx> w(a.size());
  double n2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    w[i] = (i == 0 ? cplx(1.0) : cplx(0.0)) - rot * a[i];
    n2 += std::norm(w[i]);
  }
  Householder h{std::polar(1.0, phi), {}};
  if (n2 < 1e-28) return h;
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : w) z *= inv;
  h.w = std::move(w);
  return h;
}

inline std::uint64_t bit_of(int n_total, int q) { return std::uint64_t{1} << (n_total - 1 - q); }

template <typename F>
void for_each_group(int n_total, const std::vector<int>& qubits, F&& body) {
  const std::size_t k = qubits.size();
  std::vector<std::uint64_t> offs(std::size_t{1} << k, 0);
  std::uint64_t mask = 0;
  for (std::size_t l = 0; l < offs.size(); ++l)
    for (std::size_t b = 0; b < k; ++b)
      if (l & (std::size_t{1} << (k - 1 - b))) offs[l] |= bit_of(n_total, qubits[b]);
  for (int q : qubits) mask |= bit_of(n_total, q);
  const std::uint64_t dim = std::uint64_t{1} << n_total;
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    body(base, offs);
  }
}

void apply_dense(cplx* a, int n_total, const std::vector<int>& qubits, const cplx* m) {
  const std::size_t dim = std::size_t{1} << qubits.size();
  std::vector<cplx> in(dim), out(dim);
  for_each_group(n_total, qubits, [&](std::uint64_t base, const std::vector<std::uint64_t>& offs) {
    for (std::size_t l = 0; l < dim; ++l) in[l] = a[base + offs[l]];
    for (std::size_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      const cplx* row = m + r * dim;
      for (std::size_t c = 0; c < dim; ++c) acc += row[c] * in[c];
      out[r] = acc;
    }
    for (std::size_t l = 0; l < dim; ++l) a[base + offs[l]] = out[l];
  });
}

// x -> phase * (x - 2 w (w^dag x))
void apply_reflection(cplx* a, int n_total, const std::vector<int>& qubits,
                      const std::vector<cplx>& w, cplx phase) {
  const std::size_t dim = std::size_t{1} << qubits.size();
  for_each_group(n_total, qubits, [&](std::uint64_t base, const std::vector<std::uint64_t>& offs) {
    cplx ip = 0.0;
    if (!w.empty())
      for (std::size_t l = 0; l < dim; ++l) ip += std::conj(w[l]) * a[base + offs[l]];
    for (std::size_t l = 0; l < dim; ++l) {
      cplx& x = a[base + offs[l]];
      if (!w.empty()) x -= 2.0 * w[l] * ip;
      x *= phase;
    }
  });
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
  for (const auto& i : kKinds)
    if (i.name == name) return i.kind;
  throw DomainError("unknown gate kind '" + std::string(name) + "'");
}

Gate Gate::matrix(std::vector<int> targets, const DenseOperator& m) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (m.rows() != dim || m.cols() != dim) throw DomainError("MATRIX gate: size does not match targets");
  auto p = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) (*p)[r * dim + c] = m(r, c);
  return Gate{GateKind::MATRIX, std::move(targets), 0.0, std::move(p), false};
}

Gate Gate::prepare(std::vector<int> targets, std::vector<cplx> amplitudes) {
  if (amplitudes.size() != (std::size_t{1} << targets.size()))
    throw DomainError("PREPARE gate: amplitude count does not match targets");
  auto p = std::make_shared<const std::vector<cplx>>(normalized(std::move(amplitudes), "PREPARE gate"));
  return Gate{GateKind::PREPARE, std::move(targets), 0.0, std::move(p), false};
}

Gate Gate::reflect(std::vector<int> targets, std::vector<cplx> w) {
  if (w.size() != (std::size_t{1} << targets.size()))
    throw DomainError("REFLECT gate: vector length does not match targets");
  auto p = std::make_shared<const std::vector<cplx>>(normalized(std::move(w), "REFLECT gate"));
  return Gate{GateKind::REFLECT, std::move(targets), 0.0, std::move(p), false};
}

DenseOperator gate_matrix(const Gate& g) {
  const std::size_t k = g.targets.size();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << k);
  DenseOperator m = DenseOperator::Identity(dim, dim);
  if (g.kind == GateKind::MATRIX) {
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = (*g.payload)[r * dim + c];
    return m;
  }
  if (g.kind == GateKind::RESCALED_H) {
    m << 1.0, 1.0, 1.0, -1.0;
    return m;
  }
  // Local qubits are numbered 0..k-1 in target order.
  Gate local = g;
  for (std::size_t i = 0; i < k; ++i) local.targets[i] = static_cast<int>(i);
  for (Eigen::Index c = 0; c < dim; ++c) apply_gate(m.col(c).data(), static_cast<int>(k), local);
  return m;
}

void Circuit::validate() const {
  if (n_qubits < 1) throw DomainError("circuit: n_qubits must be positive");
  for (const auto& g : gates) {
    const auto& inf = info(g.kind);
    if (inf.arity != 0 && static_cast<int>(g.targets.size()) != inf.arity)
      throw DomainError("gate " + std::string(inf.name) + ": expected " + std::to_string(inf.arity) +
                        " targets");
    if (g.targets.empty()) throw DomainError("gate " + std::string(inf.name) + ": no targets");
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      if (g.targets[i] < 0 || g.targets[i] >= n_qubits)
        throw DomainError("gate " + std::string(inf.name) + ": target out of range");
      for (std::size_t j = 0; j < i; ++j)
        if (g.targets[i] == g.targets[j])
          throw DomainError("gate " + std::string(inf.name) + ": repeated target");
    }
    if (has_payload(g.kind)) {
      const std::size_t dim = std::size_t{1} << g.targets.size();
      const std::size_t want = g.kind == GateKind::MATRIX ? dim * dim : dim;
      if (!g.payload || g.payload->size() != want)
        throw DomainError("gate " + std::string(inf.name) + ": payload size mismatch");
    }
    if (g.kind == GateKind::PHASE && !std::isfinite(g.theta))
      throw DomainError("PHASE gate: non-finite angle");
  }
}

bool Circuit::contains(GateKind kind) const {
  return std::any_of(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == kind; });
}

Circuit Circuit::inverse() const {
  Circuit out(n_qubits);
  out.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S:
        g = Gate::phase(g.targets[0], -std::numbers::pi / 2);
        break;
      case GateKind::T:
        g = Gate::phase(g.targets[0], -std::numbers::pi / 4);
        break;
      case GateKind::PHASE:
        g.theta = -g.theta;
        break;
      case GateKind::MATRIX: {
        const DenseOperator m = gate_matrix(g);
        g = Gate::matrix(g.targets, m.adjoint());
        break;
      }
      case GateKind::PREPARE:
        g.dagger = !g.dagger;
        break;
      case GateKind::RESCALED_H:
        throw DomainError("circuit inverse: RESCALED_H is not unitary");
      default:
        break;  // self-inverse
    }
    out.gates.push_back(std::move(g));
  }
  return out;
}

void append_shifted(Circuit& outer, const Circuit& inner, int offset) {
  if (offset < 0 || offset + inner.n_qubits > outer.n_qubits)
    throw DomainError("append_shifted: inner circuit does not fit");
  for (Gate g : inner.gates) {
    for (int& q : g.targets) q += offset;
    outer.gates.push_back(std::move(g));
  }
}

void apply_gate(cplx* a, int n, const Gate& g, int offset) {
  std::vector<int> q = g.targets;
  for (int& x : q) x += offset;
  const std::uint64_t dim = std::uint64_t{1} << n;
  switch (g.kind) {
    case GateKind::H: {
      const auto b = bit_of(n, q[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & b) continue;
        const cplx x0 = a[i], x1 = a[i | b];
        a[i] = kInvSqrt2 * (x0 + x1);
        a[i | b] = kInvSqrt2 * (x0 - x1);
      }
      return;
    }
    case GateKind::RESCALED_H:
      throw DomainError("RESCALED_H is only legal inside path-sum circuits");
    case GateKind::X: {
      const auto b = bit_of(n, q[0]);
      for (std::uint64_t i = 0; i < dim; ++i)
        if (!(i & b)) std::swap(a[i], a[i | b]);
      return;
    }
    case GateKind::Y: {
      const auto b = bit_of(n, q[0]);
      const cplx I(0.0, 1.0);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & b) continue;
        const cplx x0 = a[i], x1 = a[i | b];
        a[i] = -I * x1;
        a[i | b] = I * x0;
      }
      return;
    }
    case GateKind::Z:
    case GateKind::S:
    case GateKind::T:
    case GateKind::PHASE: {
      cplx ph;
      if (g.kind == GateKind::Z) ph = -1.0;
      else if (g.kind == GateKind::S) ph = cplx(0.0, 1.0);
      else if (g.kind == GateKind::T) ph = std::polar(1.0, std::numbers::pi / 4);
      else ph = std::polar(1.0, g.theta);
      const auto b = bit_of(n, q[0]);
      for (std::uint64_t i = 0; i < dim; ++i)
        if (i & b) a[i] *= ph;
      return;
    }
    case GateKind::CZ: {
      const auto m = bit_of(n, q[0]) | bit_of(n, q[1]);
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & m) == m) a[i] = -a[i];
      return;
    }
    case GateKind::CNOT:
    case GateKind::TOFFOLI: {
      std::uint64_t ctrl = 0;
      for (std::size_t i = 0; i + 1 < q.size(); ++i) ctrl |= bit_of(n, q[i]);
      const auto b = bit_of(n, q.back());
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & ctrl) == ctrl && !(i & b)) std::swap(a[i], a[i | b]);
      return;
    }
    case GateKind::MATRIX:
      apply_dense(a, n, q, g.payload->data());
      return;
    case GateKind::REFLECT:
      apply_reflection(a, n, q, *g.payload, cplx(1.0));
      return;
    case GateKind::PREPARE: {
      const Householder h = householder_for(*g.payload);
      apply_reflection(a, n, q, h.w, g.dagger ? std::conj(h.phase) : h.phase);
      return;
    }
  }
}

void apply_circuit(cplx* a, int n_total, const Circuit& c, int offset) {
  if (offset < 0 || offset + c.n_qubits > n_total)
    throw DomainError("apply_circuit: circuit does not fit in register");
  for (const auto& g : c.gates) apply_gate(a, n_total, g, offset);
}

DenseState basis_state(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  require_size(n <= kMaxSimQubits, "simulation n <= 24", "basis string has " + std::to_string(n) + " qubits");
  std::uint64_t idx = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw DomainError("basis string must contain only '0' and '1'");
    idx = (idx << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  DenseState v = DenseState::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return v;
}

DenseState simulate_state(const Circuit& c, std::string_view input) {
  require_size(c.n_qubits <= kMaxSimQubits, "simulation n <= 24",
               "circuit has " + std::to_string(c.n_qubits) + " qubits");
  c.validate();
  if (static_cast<int>(input.size()) != c.n_qubits)
    throw DomainError("simulate_state: input length does not match circuit width");
  DenseState v = basis_state(input);
  apply_circuit(v.data(), c.n_qubits, c);
  return v;
}

DenseState simulate_state(const Circuit& c) {
  return simulate_state(c, std::string(static_cast<std::size_t>(std::max(c.n_qubits, 0)), '0'));
}

DenseOperator circuit_unitary(const Circuit& c) {
  require_size(c.n_qubits <= kMaxUnitaryQubits, "unitary n <= 12",
               "circuit has " + std::to_string(c.n_qubits) + " qubits");
  c.validate();
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << c.n_qubits);
  DenseOperator u = DenseOperator::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) apply_circuit(u.col(col).data(), c.n_qubits, c);
  return u;
}

}  // namespace designlab
