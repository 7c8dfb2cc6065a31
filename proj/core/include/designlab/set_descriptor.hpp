#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "designlab/circuit.hpp"

namespace designlab {

enum class SetKind { State, Unitary };

std::string_view kind_name(SetKind kind);

// Maps a 0-based index to a circuit. Implementations must be pure and
// thread-safe; the Gram loop resolves indices concurrently.
class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual std::string type() const = 0;
  virtual Circuit circuit(std::uint64_t index0) const = 0;
  // Type-specific parameters, merged into the descriptor's "resolver" object.
  virtual nlohmann::json params() const = 0;
};

struct SetDescriptor {
  SetKind kind = SetKind::State;
  int n_qubits = 0;
  std::uint64_t cardinality = 0;
  std::shared_ptr<const Resolver> resolver;
  std::string initial_state;  // state sets only; empty means |0..0>

  // 1-based, 1 <= j <= K. Throws std::out_of_range otherwise.
  Circuit resolve(std::uint64_t j) const;
  std::string input_string() const;
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits; }
  void validate() const;
};

inline constexpr std::uint64_t kMaxCardinality = std::uint64_t{1} << 24;
// Cap on K * (amplitudes per element) for materialized ensembles.
inline constexpr std::uint64_t kMaxMaterializedEntries = std::uint64_t{1} << 26;

class ExplicitResolver : public Resolver {
 public:
  explicit ExplicitResolver(std::vector<Circuit> circuits) : circuits_(std::move(circuits)) {}
  std::string type() const override { return "explicit"; }
  Circuit circuit(std::uint64_t index0) const override { return circuits_.at(index0); }
  nlohmann::json params() const override;
  const std::vector<Circuit>& circuits() const { return circuits_; }

 private:
  std::vector<Circuit> circuits_;
};

SetDescriptor explicit_descriptor(SetKind kind, int n_qubits, std::vector<Circuit> circuits,
                                  std::string initial_state = {});

// Brickwork 1D local random circuits. Layer l (1-based) places gates on
// qubit pairs starting at qubit 0 when l is odd and at qubit 1 when l is even.
// With K equal to the total number of gate choices, index j is decoded in
// mixed radix; with smaller K, choices are drawn from a counter PRNG keyed by
// (seed, j).
SetDescriptor lrc_descriptor(int n, int depth, std::vector<Circuit> gateset, std::uint64_t seed,
                             std::optional<std::uint64_t> k = std::nullopt);

// Number of 2-qubit gates in the brickwork of the given width and depth.
int lrc_gate_count(int n, int depth);

// Element-wise materialization. States are columns of the result; for unitary
// sets each column is the column-stacked U_j.
Eigen::MatrixXcd materialize_states(const SetDescriptor& s);
Eigen::MatrixXcd materialize_unitaries(const SetDescriptor& s);

}  // namespace designlab
