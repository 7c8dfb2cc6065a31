#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "designlab/boolean_function.hpp"
#include "designlab/descriptor_json.hpp"
#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/otoc.hpp"
#include "designlab/parallel.hpp"
#include "designlab/path_sum.hpp"
#include "designlab/qalgsim.hpp"
#include "designlab/reductions.hpp"
#include "designlab/varopt.hpp"
#include "designlab/version.hpp"

namespace designlab::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string descriptor;
  std::string out;
  std::string format = "json";
  int t = 1;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<double> alpha, beta, delta, delta_prime;
  std::uint64_t samples = 10000;
  bool no_distance = false;
  // reduce
  std::string gadget, truth_table, base, ux, descriptor_out;
  std::uint64_t k = 0;
  double delta0 = 0.0;
  std::optional<double> base_fp;
  // synthesize
  std::string family;
  int max_iters = 200;
  int restarts = 8;
  int every = 1;
  double initial_step = 0.5;
  // gen
  std::string set;
  int n = 1;
  int m = 1;
  std::uint64_t chi = 1;
};

json header(const std::string& command, const Options& o) {
  return {{"tool", "designlab"}, {"version", kVersion}, {"command", command}, {"seed", o.seed}, {"tol", o.tol}};
}

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

// Scalar top-level fields only; nested values are dropped.
std::string to_csv(const json& report) {
  std::string keys, values;
  for (const auto& [key, v] : report.items()) {
    if (v.is_structured() || v.is_null()) continue;
    if (!keys.empty()) {
      keys += ',';
      values += ',';
    }
    keys += key;
    values += csv_cell(v);
  }
  return keys + "\n" + values + "\n";
}

void emit(const json& report, const Options& o, std::ostream& out) {
  const std::string text = o.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw DomainError("cannot write output file " + o.out);
  f << text;
}

SetDescriptor load_kind(const Options& o, std::optional<SetKind> want) {
  if (o.descriptor.empty()) throw DomainError("--descriptor is required");
  SetDescriptor s = load_descriptor(o.descriptor);
  if (want && s.kind != *want)
    throw DomainError("descriptor " + o.descriptor + " is a " + std::string(kind_name(s.kind)) + " set, expected " +
                      std::string(kind_name(*want)));
  return s;
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw DomainError(std::string(flag) + " is required");
  return *v;
}

json moment_report_json(const MomentReport& r) {
  json j = {{"kind", kind_name(r.kind)},
            {"t", r.t},
            {"K", r.k},
            {"d", r.d},
            {"F", r.value},
            {"haar", r.haar_value},
            {"lower_bound", r.lower_bound},
            {"upper_bound", r.upper_bound},
            {"delta", r.delta},
            {"delta_prime", r.delta_prime},
            {"certify_threshold", r.certify_threshold},
            {"refute_threshold", r.refute_threshold},
            {"bound_verdict", verdict_name(r.bound_verdict)},
            {"verdict", verdict_name(r.verdict)}};
  j["distance"] = r.distance ? json(*r.distance) : json(nullptr);
  return j;
}

json cmd_fp(const Options& o, SetKind kind) {
  const SetDescriptor s = load_kind(o, kind);
  const double f = frame_potential(s, o.t);
  check_bounds(s.kind, s.dim(), s.cardinality, o.t, f, o.tol);
  json r = header(kind == SetKind::State ? "fp-state" : "fp-unitary", o);
  r.update({{"F", f},
            {"t", o.t},
            {"n", s.n_qubits},
            {"K", s.cardinality},
            {"haar", haar_frame_potential(s.kind, s.dim(), o.t)}});
  return r;
}

json cmd_certify(const Options& o) {
  const SetDescriptor s = load_kind(o, std::nullopt);
  const double d = require(o.delta, "--delta");
  const double dp = require(o.delta_prime, "--delta-prime");
  if (!(d >= 0.0) || !(dp > d)) throw DomainError("need 0 <= delta < delta'");
  const MomentReport m = certify(s, o.t, d, dp, CertifyOptions{o.tol, !o.no_distance});
  json r = header("certify", o);
  r.update(moment_report_json(m));
  r["n"] = s.n_qubits;
  return r;
}

json cmd_decide(const Options& o, SetKind kind) {
  const SetDescriptor s = load_kind(o, kind);
  SwapTestPlan plan{require(o.alpha, "--alpha"), require(o.beta, "--beta"), o.samples, o.seed};
  const SwapTestResult res = swap_test_decide(s, o.t, plan);
  json r = header(kind == SetKind::State ? "decide-sfp" : "decide-ufp", o);
  r.update({{"t", o.t},
            {"n", s.n_qubits},
            {"K", s.cardinality},
            {"alpha", plan.alpha},
            {"beta", plan.beta},
            {"samples", res.samples},
            {"accepted", res.accepted},
            {"accept_rate", res.accept_rate},
            {"stderr", res.std_error},
            {"p_gate", res.p_gate},
            {"expected_accept", res.expected_accept},
            {"F", res.frame_potential},
            {"decision", res.at_least_alpha ? "F>=alpha" : "F<=beta"}});
  return r;
}

json cmd_qalg(const Options& o) {
  const SetDescriptor s = load_kind(o, std::nullopt);
  const EncodedState e = build_encoded_state(s, o.t);
  const double via = purity_to_fp(e);
  const double gram = frame_potential(s, o.t);
  const double delta = std::abs(via - gram);
  if (delta > o.tol * std::max(1.0, std::abs(gram)))
    throw VerificationError("qalg: purity route " + std::to_string(via) + " disagrees with Gram loop " +
                            std::to_string(gram));
  json r = header("qalg", o);
  r.update({{"t", o.t},
            {"n", s.n_qubits},
            {"K", s.cardinality},
            {"kappa", e.kappa},
            {"purity", e.rho_a.cwiseAbs2().sum()},
            {"F_via_purity", via},
            {"F_gram", gram},
            {"delta", delta}});
  return r;
}

json cmd_reduce(const Options& o) {
  GadgetInstance g;
  if (o.gadget == "bqp") {
    if (o.ux.empty()) throw DomainError("reduce --gadget bqp needs --ux CIRCUIT.json");
    std::ifstream in(o.ux);
    if (!in) throw DomainError("cannot open " + o.ux);
    json cj;
    try {
      in >> cj;
    } catch (const json::exception& e) {
      throw DomainError("circuit file " + o.ux + ": " + e.what());
    }
    g = bqp_gadget(circuit_from_json(cj), o.t, o.k == 0 ? static_cast<std::uint64_t>(o.t) + 1 : o.k);
  } else {
    if (o.truth_table.empty()) throw DomainError("reduce needs --truth-table PATH");
    const BooleanFunction f = BooleanFunction::load(o.truth_table);
    std::optional<SetDescriptor> base;
    if (!o.base.empty()) base = load_descriptor(o.base);
    if (o.gadget == "sfp") {
      g = sfp_gadget(f, base ? *base : computational_basis_set(f.n_vars() + 1), o.t, o.base_fp);
    } else if (o.gadget == "ufp") {
      g = ufp_gadget(f, base ? *base : pauli_set(f.n_vars() + 1), o.t, o.base_fp);
    } else if (o.gadget == "stdes" || o.gadget == "unides") {
      if (!base) throw DomainError("reduce --gadget " + o.gadget + " needs --base DESIGN.json");
      g = o.gadget == "stdes" ? stdes_gadget(f, *base, o.t, o.delta0) : unides_gadget(f, *base, o.t, o.delta0);
    } else {
      throw DomainError("unknown gadget '" + o.gadget + "'");
    }
  }

  json r = header("reduce", o);
  r.update({{"gadget", g.gadget},
            {"t", o.t},
            {"n", g.descriptor.n_qubits},
            {"K", g.descriptor.cardinality},
            {"predicted_fp", g.predicted_fp},
            {"descriptor", descriptor_to_json(g.descriptor)}});
  if (g.ingredients.s_f) r["s_f"] = *g.ingredients.s_f;
  if (g.thresholds) {
    const bool design = g.gadget == "stdes" || g.gadget == "unides";
    r["thresholds"] = design ? json{{"delta", g.thresholds->first}, {"delta_prime", g.thresholds->second}}
                             : json{{"alpha", g.thresholds->first}, {"beta", g.thresholds->second}};
  } else {
    r["thresholds"] = nullptr;
  }
  if (g.q1_amplitude) r["q1"] = *g.q1_amplitude;
  try {
    r["gram_fp"] = verify_gadget(g, o.tol);
    r["verified"] = true;
  } catch (const SizeGuardError& e) {
    r["verified"] = false;
    r["verification_skipped"] = e.what();
  }
  if (!o.descriptor_out.empty()) save_descriptor(g.descriptor, o.descriptor_out);
  return r;
}

json cmd_otoc(const Options& o) {
  const SetDescriptor s = load_kind(o, SetKind::Unitary);
  const OtocReport rep = otoc_report(s, o.t, o.tol);
  json r = header("otoc", o);
  r.update({{"t", rep.t},
            {"n", rep.n},
            {"direct", rep.direct_value},
            {"via_fp", rep.via_fp_value},
            {"delta", std::abs(rep.direct_value - rep.via_fp_value)},
            {"basis", rep.basis}});
  return r;
}

json cmd_synthesize(const Options& o) {
  if (o.family.empty()) throw DomainError("synthesize needs --family PATH");
  std::ifstream in(o.family);
  if (!in) throw DomainError("cannot open " + o.family);
  json fj;
  try {
    in >> fj;
  } catch (const json::exception& e) {
    throw DomainError("family file " + o.family + ": " + e.what());
  }
  const ParamFamily fam = family_from_json(fj);
  if (o.every < 1) throw DomainError("--every must be at least 1");
  MinimizeConfig cfg;
  cfg.max_iters = o.max_iters;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.initial_step = o.initial_step;
  cfg.tol = o.tol;
  const OptTrace trace = minimize(fam, o.t, cfg);

  json its = json::array();
  for (std::size_t i = 0; i < trace.iterates.size(); ++i)
    if (i % static_cast<std::size_t>(o.every) == 0 || i + 1 == trace.iterates.size())
      its.push_back({{"iter", i}, {"F", trace.iterates[i].value}, {"theta", trace.iterates[i].theta}});
  json r = header("synthesize", o);
  r.update({{"t", o.t},
            {"family", family_to_json(fam)},
            {"target", trace.target},
            {"best", {{"F", trace.best.value}, {"theta", trace.best.theta}}},
            {"best_restart", trace.best_restart},
            {"restart_values", trace.restart_values},
            {"stop_reason", trace.stop_reason},
            {"iterates", its}});
  if (o.delta && o.delta_prime) {
    const MomentReport m = certify(fam.bind(trace.best.theta), o.t, *o.delta, *o.delta_prime,
                                   CertifyOptions{kDefaultTol, true});
    r["certification"] = moment_report_json(m);
  }
  return r;
}

json cmd_gen(const Options& o) {
  SetDescriptor s;
  if (o.set == "basis") s = computational_basis_set(o.n);
  else if (o.set == "phase") s = phase_state_set(o.n, o.k, o.m);
  else if (o.set == "pauli") s = pauli_set(o.n);
  else if (o.set == "clifford") s = clifford_set(o.n);
  else if (o.set == "subset") s = subset_phase_set(random_subset_spec(o.n, o.chi, o.k, o.seed));
  else throw DomainError("gen: unknown set '" + o.set + "' (basis, phase, pauli, clifford, subset)");
  return descriptor_to_json(s);
}

struct Check {
  std::string name;
  std::function<void()> body;
};

void expect_near(double got, double want, double tol, const std::string& what) {
  if (!(std::abs(got - want) <= tol))
    throw VerificationError(what + ": got " + std::to_string(got) + ", expected " + std::to_string(want));
}

json cmd_selfcheck(const Options& o, bool& all_passed) {
  const double tol = o.tol;
  std::vector<Check> checks = {
      {"phase_state_closed_form",
       [&] {
         for (int t = 1; t <= 3; ++t)
           expect_near(frame_potential(phase_state_set(2, 4, 1), t), phase_state_fp(1, t), tol, "phase F_t");
       }},
      {"basis_set_is_1_design",
       [&] {
         const auto s = computational_basis_set(2);
         expect_near(frame_potential(s, 1), 0.25, tol, "basis F_1");
         if (certify(s, 1, 0.0, 0.1).verdict != Verdict::Certified) throw VerificationError("basis set not certified");
       }},
      {"pauli_is_1_design", [&] { expect_near(frame_potential(pauli_set(1), 1), 1.0, tol, "pauli F_1"); }},
      {"clifford_is_3_design",
       [&] {
         const auto c = clifford_set(1);
         for (int t = 1; t <= 3; ++t)
           expect_near(frame_potential(c, t), haar_frame_potential(SetKind::Unitary, 2, t), tol, "clifford F_t");
       }},
      {"purity_matches_gram",
       [&] {
         const auto s = phase_state_set(2, 3, 1);
         expect_near(fp_via_purity(s, 2), frame_potential(s, 2), tol, "state purity");
         const auto u = pauli_set(1);
         expect_near(fp_via_purity(u, 1), frame_potential(u, 1), tol, "unitary purity");
       }},
      {"sfp_gadget",
       [&] {
         const auto f = BooleanFunction::with_count(2, 3, 7);
         verify_gadget(sfp_gadget(f, computational_basis_set(3), 2), tol);
       }},
      {"ufp_gadget",
       [&] {
         const auto f = BooleanFunction::with_count(1, 1, 7);
         verify_gadget(ufp_gadget(f, pauli_set(2), 1), tol);
       }},
      {"bqp_gadget",
       [&] {
         Circuit ux(2);
         ux.add(Gate::single(GateKind::H, 0));
         const auto g = bqp_gadget(ux, 1, 2);
         verify_gadget(g, tol);
         expect_near(*g.q1_amplitude, *g.q1_measured, tol, "q1");
       }},
      {"subset_phase_count", [&] { subset_phase_count(random_subset_spec(2, 3, 3, 11), 1); }},
      {"otoc_identity", [&] { otoc_report(pauli_set(1), 1, tol); }},
      {"path_sum",
       [&] {
         Circuit c(3);
         c.add(Gate::single(GateKind::H, 0)).add(Gate::single(GateKind::H, 1)).add(Gate::toffoli(0, 1, 2));
         const QubitPerm swap02 = {2, 1, 0};
         expect_near(path_sum_count(c, swap02).reconstructed, path_sum_direct(c, swap02), 1e-12, "path sum");
       }},
  };

  json results = json::array();
  all_passed = true;
  for (const auto& c : checks) {
    json entry = {{"name", c.name}};
    try {
      c.body();
      entry["passed"] = true;
    } catch (const std::exception& e) {
      entry["passed"] = false;
      entry["detail"] = e.what();
      all_passed = false;
    }
    results.push_back(entry);
  }
  json r = header("selfcheck", o);
  r["checks"] = results;
  r["passed"] = all_passed;
  return r;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--t", o.t, "Design degree t")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "PRNG seed");
  sub->add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", o.threads, "Worker threads (default: DESIGNLAB_THREADS or all cores)");
  sub->add_option("--out", o.out, "Write the report to PATH instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"designlab: frame potentials, t-design certification and reduction gadgets", "designlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* fp_state = app.add_subcommand("fp-state", "State frame potential F_t of a descriptor");
  auto* fp_unitary = app.add_subcommand("fp-unitary", "Unitary frame potential F_t of a descriptor");
  auto* certify_cmd = app.add_subcommand("certify", "Certify or refute a delta-approximate t-design");
  auto* decide_sfp = app.add_subcommand("decide-sfp", "Swap-test decision F >= alpha or F <= beta (states)");
  auto* decide_ufp = app.add_subcommand("decide-ufp", "Swap-test decision F >= alpha or F <= beta (unitaries)");
  auto* qalg = app.add_subcommand("qalg", "Frame potential from the purity of the encoded register");
  auto* reduce = app.add_subcommand("reduce", "Build and verify a reduction gadget");
  auto* otoc = app.add_subcommand("otoc", "Average 2t-point OTOC, direct and via F_t");
  auto* synth = app.add_subcommand("synthesize", "Minimize F_t over a parameterized family");
  auto* selfcheck = app.add_subcommand("selfcheck", "Run the built-in invariant suite");
  auto* gen = app.add_subcommand("gen", "Write a built-in descriptor as JSON");

  for (auto* sub : {fp_state, fp_unitary, certify_cmd, decide_sfp, decide_ufp, qalg, otoc}) {
    add_common(sub, o);
    sub->add_option("--descriptor", o.descriptor, "Set descriptor JSON")->required();
  }
  for (auto* sub : {reduce, synth, selfcheck, gen}) add_common(sub, o);

  certify_cmd->add_option("--delta", o.delta, "Certification accuracy delta")->required();
  certify_cmd->add_option("--delta-prime", o.delta_prime, "Refutation accuracy delta'")->required();
  certify_cmd->add_flag("--no-distance", o.no_distance, "Use the frame-potential bounds only");

  for (auto* sub : {decide_sfp, decide_ufp}) {
    sub->add_option("--alpha", o.alpha, "Upper promise threshold")->required();
    sub->add_option("--beta", o.beta, "Lower promise threshold")->required();
    sub->add_option("--samples", o.samples, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  }

  reduce->add_option("--gadget", o.gadget, "Gadget")
      ->required()
      ->check(CLI::IsMember({"sfp", "ufp", "stdes", "unides", "bqp"}));
  reduce->add_option("--truth-table", o.truth_table, "Binary truth-table file");
  reduce->add_option("--base", o.base, "Base set descriptor JSON");
  reduce->add_option("--base-fp", o.base_fp, "Known frame potential of the base set");
  reduce->add_option("--delta0", o.delta0, "Accuracy of the base design")->check(CLI::NonNegativeNumber);
  reduce->add_option("--ux", o.ux, "Circuit JSON for U_x (bqp)");
  reduce->add_option("--k", o.k, "Number of phase states (bqp)");
  reduce->add_option("--descriptor-out", o.descriptor_out, "Also write the gadget descriptor to PATH");

  synth->add_option("--family", o.family, "Parameter family JSON")->required();
  synth->add_option("--max-iters", o.max_iters, "Iterations per restart")->check(CLI::NonNegativeNumber);
  synth->add_option("--restarts", o.restarts, "Independent restarts")->check(CLI::PositiveNumber);
  synth->add_option("--every", o.every, "Keep every k-th iterate in the trace")->check(CLI::PositiveNumber);
  synth->add_option("--initial-step", o.initial_step, "First line-search step")->check(CLI::PositiveNumber);
  synth->add_option("--delta", o.delta, "Certify the result at this delta");
  synth->add_option("--delta-prime", o.delta_prime, "Refutation threshold for the certification");

  gen->add_option("--set", o.set, "basis | phase | pauli | clifford | subset")->required();
  gen->add_option("--n", o.n, "Qubits")->check(CLI::PositiveNumber);
  gen->add_option("--k", o.k, "Cardinality (phase, subset)");
  gen->add_option("--m", o.m, "Phase qubits (phase)")->check(CLI::PositiveNumber);
  gen->add_option("--chi", o.chi, "Subset size (subset)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    set_thread_count(o.threads > 0 ? o.threads : default_thread_count());
    json report;
    int code = kOk;
    if (fp_state->parsed()) report = cmd_fp(o, SetKind::State);
    else if (fp_unitary->parsed()) report = cmd_fp(o, SetKind::Unitary);
    else if (certify_cmd->parsed()) report = cmd_certify(o);
    else if (decide_sfp->parsed()) report = cmd_decide(o, SetKind::State);
    else if (decide_ufp->parsed()) report = cmd_decide(o, SetKind::Unitary);
    else if (qalg->parsed()) report = cmd_qalg(o);
    else if (reduce->parsed()) report = cmd_reduce(o);
    else if (otoc->parsed()) report = cmd_otoc(o);
    else if (synth->parsed()) report = cmd_synthesize(o);
    else if (gen->parsed()) report = cmd_gen(o);
    else if (selfcheck->parsed()) {
      bool ok = true;
      report = cmd_selfcheck(o, ok);
      if (!ok) code = kVerification;
    }
    emit(report, o, out);
    return code;
  } catch (const SizeGuardError& e) {
    err << "error: size guard exceeded (" << e.what()
        << "). Dense moments and Gram loops grow like d^{2t} and K^2; reduce n, t or K.\n";
    return kSizeGuard;
  } catch (const VerificationError& e) {
    err << "error: verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: internal failure: " << e.what() << "\n";
    return kVerification;
  }
}

}  // namespace designlab::cli
