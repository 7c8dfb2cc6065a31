#include "designlab/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "designlab/errors.hpp"
#include "designlab/numerics.hpp"
#include "designlab/rng.hpp"

namespace designlab {

namespace {

class BasisResolver : public Resolver {
 public:
  explicit BasisResolver(int n) : n_(n) {}
  std::string type() const override { return "basis"; }
  Circuit circuit(std::uint64_t index0) const override {
    Circuit c(n_);
    for (int q = 0; q < n_; ++q)
      if ((index0 >> (n_ - 1 - q)) & 1u) c.add(Gate::single(GateKind::X, q));
    return c;
  }
  nlohmann::json params() const override { return nlohmann::json::object(); }

 private:
  int n_;
};

class PhaseResolver : public Resolver {
 public:
  PhaseResolver(int n, std::uint64_t k, int m) : n_(n), k_(k), m_(m) {}
  std::string type() const override { return "phase"; }
  Circuit circuit(std::uint64_t index0) const override {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(index0 + 1) / static_cast<double>(k_);
    Circuit c(n_);
    for (int q = 0; q < m_; ++q) {
      c.add(Gate::single(GateKind::H, q));
      c.add(Gate::phase(q, theta));
    }
    return c;
  }
  nlohmann::json params() const override { return {{"m", m_}}; }

 private:
  int n_;
  std::uint64_t k_;
  int m_;
};

class PauliResolver : public Resolver {
 public:
  explicit PauliResolver(int n) : n_(n) {}
  std::string type() const override { return "pauli"; }
  Circuit circuit(std::uint64_t index0) const override {
    static constexpr GateKind kinds[] = {GateKind::X, GateKind::Y, GateKind::Z};
    Circuit c(n_);
    for (int q = 0; q < n_; ++q) {
      const auto digit = (index0 >> (2 * (n_ - 1 - q))) & 3u;
      if (digit) c.add(Gate::single(kinds[digit - 1], q));
    }
    return c;
  }
  nlohmann::json params() const override { return nlohmann::json::object(); }

 private:
  int n_;
};

class CliffordResolver : public Resolver {
 public:
  explicit CliffordResolver(int n) : circuits_(&clifford_circuits(n)) {}
  std::string type() const override { return "clifford"; }
  Circuit circuit(std::uint64_t index0) const override { return circuits_->at(index0); }
  nlohmann::json params() const override { return nlohmann::json::object(); }

 private:
  const std::vector<Circuit>* circuits_;
};

class SubsetPhaseResolver : public Resolver {
 public:
  explicit SubsetPhaseResolver(SubsetPhaseSpec spec) : spec_(std::move(spec)) {}
  std::string type() const override { return "subset_phase"; }
  Circuit circuit(std::uint64_t index0) const override {
    std::vector<int> targets(spec_.n);
    std::iota(targets.begin(), targets.end(), 0);
    Circuit c(spec_.n);
    c.add(Gate::prepare(std::move(targets), spec_.amplitudes(index0)));
    return c;
  }
  nlohmann::json params() const override { return {{"spec", subset_spec_to_json(spec_)}}; }

 private:
  SubsetPhaseSpec spec_;
};

SetDescriptor make(SetKind kind, int n, std::uint64_t k, std::shared_ptr<const Resolver> r) {
  SetDescriptor s;
  s.kind = kind;
  s.n_qubits = n;
  s.cardinality = k;
  s.resolver = std::move(r);
  return s;
}

std::uint64_t parse_bits(const std::string& s) {
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw DomainError("subset spec: basis strings must be bit strings");
    v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return v;
}

}  // namespace

SetDescriptor computational_basis_set(int n) {
  if (n < 1) throw DomainError("computational_basis_set: n must be positive");
  require_size(n <= 12, "basis set n <= 12", "n = " + std::to_string(n));
  return make(SetKind::State, n, std::uint64_t{1} << n, std::make_shared<BasisResolver>(n));
}

SetDescriptor phase_state_set(int n, std::uint64_t k, int m) {
  if (m < 1 || m > n - 1) throw DomainError("phase_state_set: need 1 <= m <= n-1");
  if (k < 1) throw DomainError("phase_state_set: K must be positive");
  require_size(k <= kMaxCardinality, "cardinality K <= 2^24", "K = " + std::to_string(k));
  return make(SetKind::State, n, k, std::make_shared<PhaseResolver>(n, k, m));
}

double phase_state_fp(int m, int t) {
  const int mt = m * t;
  return std::ldexp(static_cast<double>(binomial(2 * mt - 1, mt - 1)), 1 - 2 * mt);
}

SetDescriptor pauli_set(int n) {
  if (n < 1) throw DomainError("pauli_set: n must be positive");
  require_size(n <= 8, "pauli set n <= 8", "n = " + std::to_string(n));
  return make(SetKind::Unitary, n, std::uint64_t{1} << (2 * n), std::make_shared<PauliResolver>(n));
}

SetDescriptor clifford_set(int n) {
  if (n != 1 && n != 2) throw DomainError("clifford_set: only n in {1, 2} is supported");
  const auto& circuits = clifford_circuits(n);
  return make(SetKind::Unitary, n, circuits.size(), std::make_shared<CliffordResolver>(n));
}

void SubsetPhaseSpec::validate() const {
  if (n < 1) throw DomainError("subset spec: n must be positive");
  require_size(n <= kMaxSimQubits, "simulation n <= 24", "n = " + std::to_string(n));
  if (subset.empty()) throw DomainError("subset spec: X must be nonempty");
  if (phases.empty()) throw DomainError("subset spec: A must have at least one row");
  std::uint64_t prev = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (static_cast<int>(subset[i].size()) != n) throw DomainError("subset spec: string length != n");
    const auto v = parse_bits(subset[i]);
    if (i > 0 && v <= prev) throw DomainError("subset spec: X must be sorted and distinct");
    prev = v;
  }
  for (const auto& row : phases)
    if (row.size() != subset.size()) throw DomainError("subset spec: row length != |X|");
}

std::vector<cplx> SubsetPhaseSpec::amplitudes(std::uint64_t row) const {
  std::vector<cplx> a(std::size_t{1} << n, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(subset.size()));
  const auto& bits = phases.at(row);
  for (std::size_t i = 0; i < subset.size(); ++i) a[parse_bits(subset[i])] = bits[i] ? -amp : amp;
  return a;
}

nlohmann::json subset_spec_to_json(const SubsetPhaseSpec& spec) {
  static constexpr char digits[] = "0123456789abcdef";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : spec.phases) {
    std::vector<std::uint8_t> bytes((row.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    std::string hex;
    for (auto b : bytes) {
      hex.push_back(digits[b >> 4]);
      hex.push_back(digits[b & 15]);
    }
    rows.push_back(hex);
  }
  return {{"n", spec.n}, {"X", spec.subset}, {"A", rows}};
}

SubsetPhaseSpec subset_spec_from_json(const nlohmann::json& j) {
  SubsetPhaseSpec spec;
  spec.n = j.at("n").get<int>();
  spec.subset = j.at("X").get<std::vector<std::string>>();
  const std::size_t chi = spec.subset.size();
  for (const auto& row : j.at("A")) {
    const auto hex = row.get<std::string>();
    if (hex.size() != 2 * ((chi + 7) / 8)) throw DomainError("subset spec: row hex has wrong length");
    std::vector<bool> bits(chi, false);
    for (std::size_t i = 0; i < chi; ++i) {
      const auto byte = std::stoul(hex.substr(2 * (i / 8), 2), nullptr, 16);
      bits[i] = (byte >> (i % 8)) & 1u;
    }
    spec.phases.push_back(std::move(bits));
  }
  spec.validate();
  return spec;
}

SubsetPhaseSpec random_subset_spec(int n, std::uint64_t chi, std::uint64_t k, std::uint64_t seed) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (chi < 1 || chi > dim) throw DomainError("random_subset_spec: need 1 <= chi <= 2^n");
  const CounterRng rng(seed, 0x5b5e7);
  std::vector<std::uint64_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  for (std::uint64_t i = dim; i > 1; --i) std::swap(order[i - 1], order[rng.below(i, i)]);
  order.resize(chi);
  std::sort(order.begin(), order.end());
  SubsetPhaseSpec spec;
  spec.n = n;
  for (auto x : order) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q)
      if ((x >> (n - 1 - q)) & 1u) s[q] = '1';
    spec.subset.push_back(s);
  }
  std::uint64_t counter = dim;
  for (std::uint64_t r = 0; r < k; ++r) {
    std::vector<bool> row(chi);
    for (std::uint64_t i = 0; i < chi; ++i) row[i] = rng.bits(counter++) & 1u;
    spec.phases.push_back(std::move(row));
  }
  return spec;
}

SetDescriptor subset_phase_set(const SubsetPhaseSpec& spec) {
  spec.validate();
  require_size(spec.k() <= kMaxCardinality, "cardinality K <= 2^24", "K = " + std::to_string(spec.k()));
  return make(SetKind::State, spec.n, spec.k(), std::make_shared<SubsetPhaseResolver>(spec));
}

CardinalityThreshold min_cardinality(ThresholdKind kind, std::uint64_t d, int t, double delta) {
  if (!(delta >= 0.0)) throw DomainError("min_cardinality: delta must be nonnegative");
  if (d < 1 || t < 1) throw DomainError("min_cardinality: need d >= 1 and t >= 1");
  double value;
  if (kind == ThresholdKind::State) {
    value = static_cast<double>(sym_dim(d, t)) / (1.0 + delta * delta);
  } else {
    value = std::pow(static_cast<double>(d), 2.0 * t) /
            (static_cast<double>(haar_unitary_fp(d, t)) + delta * delta);
  }
  return {kind, d, t, delta, value};
}

std::uint64_t haar_unitary_fp(std::uint64_t d, int t) {
  if (t < 0 || t > 10) throw DomainError("haar_unitary_fp: t must be in 0..10");
  if (d < 1) throw DomainError("haar_unitary_fp: d must be positive");
  if (static_cast<std::uint64_t>(t) <= d) return factorial(t);
  // Longest decreasing subsequence via patience sorting on the negated sequence.
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  std::vector<int> tails;
  do {
    tails.clear();
    for (int v : p) {
      auto it = std::lower_bound(tails.begin(), tails.end(), -v);
      if (it == tails.end()) tails.push_back(-v);
      else *it = -v;
    }
    if (tails.size() <= d) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace designlab
