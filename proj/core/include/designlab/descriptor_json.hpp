#pragma once

#include <string>

#include <json.hpp>

#include "designlab/boolean_function.hpp"
#include "designlab/circuit.hpp"
#include "designlab/set_descriptor.hpp"

namespace designlab {

// {"n": int, "gates": [{"kind": "H", "targets": [0], "theta"?: real,
//   "matrix"? | "amplitudes"? : [[re, im], ...], "dagger"?: bool}]}
nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

// {"n_vars": int, "hex": packed truth table}
nlohmann::json boolean_to_json(const BooleanFunction& f);
BooleanFunction boolean_from_json(const nlohmann::json& j);

// {"kind": "state"|"unitary", "n": int, "K": int,
//  "resolver": {"type": ..., params...}, "initial_state"?: "0..0"}
nlohmann::json descriptor_to_json(const SetDescriptor& s);
SetDescriptor descriptor_from_json(const nlohmann::json& j);

SetDescriptor load_descriptor(const std::string& path);
void save_descriptor(const SetDescriptor& s, const std::string& path);

nlohmann::json cplx_array_to_json(const std::vector<cplx>& v);
std::vector<cplx> cplx_array_from_json(const nlohmann::json& j);

}  // namespace designlab
