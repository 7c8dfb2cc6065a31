#include "designlab/set_descriptor.hpp"

#include <stdexcept>
#include <string>

#include "designlab/descriptor_json.hpp"
#include "designlab/errors.hpp"
#include "designlab/parallel.hpp"
#include "designlab/rng.hpp"

namespace designlab {

std::string_view kind_name(SetKind kind) { return kind == SetKind::State ? "state" : "unitary"; }

Circuit SetDescriptor::resolve(std::uint64_t j) const {
  if (j < 1 || j > cardinality)
    throw std::out_of_range("resolve: index " + std::to_string(j) + " outside 1.." +
                            std::to_string(cardinality));
  if (!resolver) throw DomainError("resolve: descriptor has no resolver");
  Circuit c = resolver->circuit(j - 1);
  if (c.n_qubits != n_qubits) throw DomainError("resolve: resolver produced a circuit of the wrong width");
  return c;
}

std::string SetDescriptor::input_string() const {
  if (initial_state.empty()) return std::string(static_cast<std::size_t>(n_qubits), '0');
  return initial_state;
}

void SetDescriptor::validate() const {
  if (n_qubits < 1) throw DomainError("descriptor: n must be positive");
  if (cardinality < 1) throw DomainError("descriptor: K must be positive");
  if (!resolver) throw DomainError("descriptor: missing resolver");
  if (!initial_state.empty()) {
    if (kind != SetKind::State) throw DomainError("descriptor: initial_state only applies to state sets");
    if (static_cast<int>(initial_state.size()) != n_qubits)
      throw DomainError("descriptor: initial_state length must equal n");
    for (char ch : initial_state)
      if (ch != '0' && ch != '1') throw DomainError("descriptor: initial_state must be a bit string");
  }
}

nlohmann::json ExplicitResolver::params() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : circuits_) arr.push_back(circuit_to_json(c));
  return {{"circuits", arr}};
}

SetDescriptor explicit_descriptor(SetKind kind, int n_qubits, std::vector<Circuit> circuits,
                                  std::string initial_state) {
  if (circuits.empty()) throw DomainError("explicit descriptor: empty circuit list");
  for (const auto& c : circuits) {
    if (c.n_qubits != n_qubits) throw DomainError("explicit descriptor: circuit width mismatch");
    c.validate();
  }
  SetDescriptor s;
  s.kind = kind;
  s.n_qubits = n_qubits;
  s.cardinality = circuits.size();
  s.resolver = std::make_shared<ExplicitResolver>(std::move(circuits));
  s.initial_state = std::move(initial_state);
  s.validate();
  return s;
}

namespace {

std::vector<std::pair<int, int>> brickwork_pairs(int n, int depth) {
  std::vector<std::pair<int, int>> pairs;
  for (int layer = 1; layer <= depth; ++layer)
    for (int q = (layer % 2 == 1) ? 0 : 1; q + 1 < n; q += 2) pairs.emplace_back(q, q + 1);
  return pairs;
}

class LrcResolver : public Resolver {
 public:
  LrcResolver(int n, int depth, std::vector<Circuit> gateset, std::uint64_t seed, std::uint64_t k,
              bool enumerate)
      : n_(n), depth_(depth), gateset_(std::move(gateset)), seed_(seed), k_(k),
        enumerate_(enumerate), pairs_(brickwork_pairs(n, depth)) {}

  std::string type() const override { return "lrc"; }

  Circuit circuit(std::uint64_t index0) const override {
    Circuit c(n_);
    const std::uint64_t g = gateset_.size();
    const CounterRng rng(seed_, index0 + 1);
    std::uint64_t rest = index0;
    // Mixed radix: the first brickwork gate is the most significant digit.
    std::vector<std::uint64_t> choice(pairs_.size());
    for (std::size_t i = pairs_.size(); i-- > 0;) {
      if (enumerate_) {
        choice[i] = rest % g;
        rest /= g;
      } else {
        choice[i] = rng.below(i, g);
      }
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const Circuit& gate = gateset_[choice[i]];
      append_shifted(c, gate, pairs_[i].first);
    }
    return c;
  }

  nlohmann::json params() const override {
    nlohmann::json gs = nlohmann::json::array();
    for (const auto& c : gateset_) gs.push_back(circuit_to_json(c));
    return {{"depth", depth_}, {"gateset", gs}, {"seed", seed_}, {"K", k_}};
  }

 private:
  int n_;
  int depth_;
  std::vector<Circuit> gateset_;
  std::uint64_t seed_;
  std::uint64_t k_;
  bool enumerate_;
  std::vector<std::pair<int, int>> pairs_;
};

}  // namespace

int lrc_gate_count(int n, int depth) { return static_cast<int>(brickwork_pairs(n, depth).size()); }

SetDescriptor lrc_descriptor(int n, int depth, std::vector<Circuit> gateset, std::uint64_t seed,
                             std::optional<std::uint64_t> k) {
  if (gateset.empty()) throw DomainError("lrc: gate set must be nonempty");
  if (depth < 1) throw DomainError("lrc: depth must be at least 1");
  if (n < 2) throw DomainError("lrc: need at least 2 qubits");
  for (const auto& g : gateset) {
    if (g.n_qubits != 2) throw DomainError("lrc: gate set elements must be 2-qubit circuits");
    g.validate();
  }
  const int gates = lrc_gate_count(n, depth);
  // Total number of distinct choice sequences, saturating above the cap.
  std::uint64_t total = 1;
  bool overflow = false;
  for (int i = 0; i < gates && !overflow; ++i) {
    if (total > kMaxCardinality / gateset.size()) overflow = true;
    else total *= gateset.size();
  }
  std::uint64_t kk;
  if (k) {
    if (*k < 1) throw DomainError("lrc: K must be positive");
    if (*k > kMaxCardinality) throw SizeGuardError("cardinality K <= 2^24", "requested K = " + std::to_string(*k));
    if (!overflow && *k > total)
      throw DomainError("lrc: cap exceeded, K = " + std::to_string(*k) + " but only " +
                        std::to_string(total) + " gate sequences exist");
    kk = *k;
  } else {
    if (overflow)
      throw SizeGuardError("cardinality K <= 2^24",
                           "brickwork has more than 2^24 gate sequences; pass an explicit K");
    kk = total;
  }
  const bool enumerate = !overflow && kk == total;
  SetDescriptor s;
  s.kind = SetKind::Unitary;
  s.n_qubits = n;
  s.cardinality = kk;
  s.resolver = std::make_shared<LrcResolver>(n, depth, std::move(gateset), seed, kk, enumerate);
  return s;
}

Eigen::MatrixXcd materialize_states(const SetDescriptor& s) {
  s.validate();
  require_size(s.cardinality <= kMaxCardinality, "cardinality K <= 2^24", "K = " + std::to_string(s.cardinality));
  require_size(s.n_qubits <= kMaxSimQubits, "simulation n <= 24", "n = " + std::to_string(s.n_qubits));
  require_size(s.cardinality * s.dim() <= kMaxMaterializedEntries, "materialized K*2^n <= 2^26",
               "K = " + std::to_string(s.cardinality) + ", n = " + std::to_string(s.n_qubits));
  const auto dim = static_cast<Eigen::Index>(s.dim());
  Eigen::MatrixXcd out(dim, static_cast<Eigen::Index>(s.cardinality));
  const std::string input = s.input_string();
  parallel_for(s.cardinality, [&](std::size_t i) {
    out.col(static_cast<Eigen::Index>(i)) = simulate_state(s.resolve(i + 1), input);
  });
  return out;
}

Eigen::MatrixXcd materialize_unitaries(const SetDescriptor& s) {
  s.validate();
  require_size(s.cardinality <= kMaxCardinality, "cardinality K <= 2^24", "K = " + std::to_string(s.cardinality));
  require_size(s.n_qubits <= kMaxUnitaryQubits, "unitary n <= 12", "n = " + std::to_string(s.n_qubits));
  require_size(s.cardinality * s.dim() * s.dim() <= kMaxMaterializedEntries, "materialized K*4^n <= 2^26",
               "K = " + std::to_string(s.cardinality) + ", n = " + std::to_string(s.n_qubits));
  const auto d2 = static_cast<Eigen::Index>(s.dim() * s.dim());
  Eigen::MatrixXcd out(d2, static_cast<Eigen::Index>(s.cardinality));
  parallel_for(s.cardinality, [&](std::size_t i) {
    const DenseOperator u = circuit_unitary(s.resolve(i + 1));
    out.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXcd>(u.data(), d2);
  });
  return out;
}

}  // namespace designlab
