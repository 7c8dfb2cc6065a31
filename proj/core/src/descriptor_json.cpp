#include "designlab/descriptor_json.hpp"

#include <fstream>
#include <sstream>

#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/reductions.hpp"

namespace designlab {

namespace {

using nlohmann::json;

SetKind kind_from_json(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "state") return SetKind::State;
  if (s == "unitary") return SetKind::Unitary;
  throw DomainError("descriptor: kind must be \"state\" or \"unitary\", got \"" + s + "\"");
}

SetDescriptor build(const json& j) {
  const SetKind kind = kind_from_json(j.at("kind"));
  const int n = j.at("n").get<int>();
  const json& r = j.at("resolver");
  const std::string type = r.at("type").get<std::string>();
  const std::uint64_t k = j.at("K").get<std::uint64_t>();
  std::string initial = j.value("initial_state", std::string());

  SetDescriptor s;
  if (type == "explicit") {
    std::vector<Circuit> circuits;
    for (const auto& c : r.at("circuits")) circuits.push_back(circuit_from_json(c));
    s = explicit_descriptor(kind, n, std::move(circuits), initial);
    initial.clear();
  } else if (type == "lrc") {
    std::vector<Circuit> gateset;
    for (const auto& c : r.at("gateset")) gateset.push_back(circuit_from_json(c));
    s = lrc_descriptor(n, r.at("depth").get<int>(), std::move(gateset), r.value("seed", std::uint64_t{0}),
                       r.contains("K") ? std::optional<std::uint64_t>(r.at("K").get<std::uint64_t>()) : std::optional<std::uint64_t>(k));
  } else if (type == "basis") {
    s = computational_basis_set(n);
  } else if (type == "phase") {
    s = phase_state_set(n, k, r.at("m").get<int>());
  } else if (type == "pauli") {
    s = pauli_set(n);
  } else if (type == "clifford") {
    s = clifford_set(n);
  } else if (type == "subset_phase") {
    s = subset_phase_set(subset_spec_from_json(r.at("spec")));
  } else if (type == "gadget:sfp" || type == "gadget:ufp" || type == "gadget:stdes" || type == "gadget:unides") {
    s = gadget_descriptor(type.substr(7), boolean_from_json(r.at("f")), descriptor_from_json(r.at("base")));
  } else if (type == "gadget:bqp") {
    s = bqp_descriptor(circuit_from_json(r.at("Ux")), r.at("K_phase").get<std::uint64_t>());
  } else {
    throw DomainError("descriptor: unknown resolver type \"" + type + "\"");
  }

  if (s.kind != kind) throw DomainError("descriptor: kind does not match resolver \"" + type + "\"");
  if (s.n_qubits != n)
    throw DomainError("descriptor: n = " + std::to_string(n) + " but resolver \"" + type + "\" gives " +
                      std::to_string(s.n_qubits));
  if (s.cardinality != k)
    throw DomainError("descriptor: K = " + std::to_string(k) + " but resolver \"" + type + "\" gives " +
                      std::to_string(s.cardinality));
  if (!initial.empty()) s.initial_state = initial;
  s.validate();
  return s;
}

}  // namespace

json cplx_array_to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

std::vector<cplx> cplx_array_from_json(const json& j) {
  std::vector<cplx> v;
  for (const auto& e : j) {
    if (e.is_number()) {
      v.emplace_back(e.get<double>(), 0.0);
    } else {
      if (!e.is_array() || e.size() != 2) throw DomainError("complex entries must be [re, im] pairs");
      v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  }
  return v;
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json e = {{"kind", gate_name(g.kind)}, {"targets", g.targets}};
    if (g.kind == GateKind::PHASE) e["theta"] = g.theta;
    if (g.payload) e[g.kind == GateKind::MATRIX ? "matrix" : "amplitudes"] = cplx_array_to_json(*g.payload);
    if (g.dagger) e["dagger"] = true;
    gates.push_back(std::move(e));
  }
  return {{"n", c.n_qubits}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
  try {
    Circuit c(j.at("n").get<int>());
    for (const auto& e : j.at("gates")) {
      const GateKind kind = gate_kind_from_name(e.at("kind").get<std::string>());
      auto targets = e.at("targets").get<std::vector<int>>();
      Gate g;
      switch (kind) {
        case GateKind::MATRIX: {
          const auto flat = cplx_array_from_json(e.at("matrix"));
          const auto dim = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
          if (static_cast<Eigen::Index>(flat.size()) != dim * dim)
            throw DomainError("circuit: MATRIX payload has the wrong size");
          DenseOperator m(dim, dim);
          for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index col = 0; col < dim; ++col) m(r, col) = flat[static_cast<std::size_t>(r * dim + col)];
          g = Gate::matrix(std::move(targets), m);
          break;
        }
        case GateKind::PREPARE:
          g = Gate::prepare(std::move(targets), cplx_array_from_json(e.at("amplitudes")));
          g.dagger = e.value("dagger", false);
          break;
        case GateKind::REFLECT:
          g = Gate::reflect(std::move(targets), cplx_array_from_json(e.at("amplitudes")));
          break;
        default:
          g = Gate{kind, std::move(targets), e.value("theta", 0.0), nullptr, false};
      }
      c.add(std::move(g));
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw DomainError(std::string("circuit JSON: ") + e.what());
  }
}

json boolean_to_json(const BooleanFunction& f) { return {{"n_vars", f.n_vars()}, {"hex", f.to_hex()}}; }

BooleanFunction boolean_from_json(const json& j) {
  try {
    return BooleanFunction::from_hex(j.at("n_vars").get<int>(), j.at("hex").get<std::string>());
  } catch (const json::exception& e) {
    throw DomainError(std::string("boolean function JSON: ") + e.what());
  }
}

json descriptor_to_json(const SetDescriptor& s) {
  s.validate();
  json r = s.resolver->params();
  r["type"] = s.resolver->type();
  json j = {{"kind", kind_name(s.kind)}, {"n", s.n_qubits}, {"K", s.cardinality}, {"resolver", r}};
  if (!s.initial_state.empty()) j["initial_state"] = s.initial_state;
  return j;
}

SetDescriptor descriptor_from_json(const json& j) {
  try {
    return build(j);
  } catch (const json::exception& e) {
    throw DomainError(std::string("descriptor JSON: ") + e.what());
  }
}

SetDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open descriptor file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("descriptor file " + path + ": " + e.what());
  }
  return descriptor_from_json(j);
}

void save_descriptor(const SetDescriptor& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write descriptor file " + path);
  out << descriptor_to_json(s).dump(2) << '\n';
}

}  // namespace designlab
