#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "designlab/set_descriptor.hpp"

namespace designlab {

// |z> for every z in {0,1}^n, ordered by the integer value of z.
SetDescriptor computational_basis_set(int n);

// |phi_j> = ((|0> + e^{2 i j pi / K}|1>)/sqrt2)^{(x)m} (x) |0^{n-m}>, j = 1..K.
SetDescriptor phase_state_set(int n, std::uint64_t k, int m);

// Closed form 2^{1-2mt} C(2mt-1, mt-1), valid for K > mt.
double phase_state_fp(int m, int t);

// {I,X,Y,Z}^{(x)n}; qubit 0 is the most significant base-4 digit.
SetDescriptor pauli_set(int n);

// Clifford group modulo global phase for n in {1, 2}.
SetDescriptor clifford_set(int n);
// Canonical circuits of the enumeration, cached after the first call.
const std::vector<Circuit>& clifford_circuits(int n);

struct SubsetPhaseSpec {
  int n = 0;
  std::vector<std::string> subset;        // sorted distinct basis strings
  std::vector<std::vector<bool>> phases;  // K rows of chi bits

  std::uint64_t chi() const { return subset.size(); }
  std::uint64_t k() const { return phases.size(); }
  void validate() const;
  // Amplitudes of row j (0-based) over the full 2^n basis.
  std::vector<cplx> amplitudes(std::uint64_t row) const;
};

// Rows are hex strings; bit i of a row is bit i%8 of byte i/8.
nlohmann::json subset_spec_to_json(const SubsetPhaseSpec& spec);
SubsetPhaseSpec subset_spec_from_json(const nlohmann::json& j);
SubsetPhaseSpec random_subset_spec(int n, std::uint64_t chi, std::uint64_t k, std::uint64_t seed);

SetDescriptor subset_phase_set(const SubsetPhaseSpec& spec);

enum class ThresholdKind { State, Unitary };

struct CardinalityThreshold {
  ThresholdKind kind;
  std::uint64_t d;
  int t;
  double delta;
  double value;
};

// K_st = d_t / (1 + delta^2); K_uni = d^{2t} / (F_Haar + delta^2), F_Haar = t! for t <= d.
CardinalityThreshold min_cardinality(ThresholdKind kind, std::uint64_t d, int t, double delta);

// Haar unitary frame potential: the number of permutations in S_t with no
// decreasing subsequence longer than d. Equals t! when t <= d.
std::uint64_t haar_unitary_fp(std::uint64_t d, int t);

}  // namespace designlab
