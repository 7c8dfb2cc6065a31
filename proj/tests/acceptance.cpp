// Acceptance suite: one PASS/FAIL line per criterion. Exit status is zero when
// every failure is listed in kKnownFailures.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "designlab/descriptor_json.hpp"
#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/numerics.hpp"
#include "designlab/otoc.hpp"
#include "designlab/path_sum.hpp"
#include "designlab/qalgsim.hpp"
#include "designlab/reductions.hpp"
#include "designlab/rng.hpp"
#include "designlab/varopt.hpp"

#ifdef DESIGNLAB_HAVE_CLI
#include "../tools/cli.hpp"
#endif

using namespace designlab;
namespace fs = std::filesystem;

namespace {

// Clifford(1) has F_3 = 5 (the Haar value for d = 2), not 3! = 6.
const std::set<int> kKnownFailures = {2};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

Circuit random_circuit(int n, int gates, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Circuit c(n);
  for (int g = 0; g < gates; ++g) {
    const int q = static_cast<int>(gen() % n);
    const int r = static_cast<int>((q + 1 + gen() % std::max(1, n - 1)) % n);
    switch (gen() % (n > 1 ? 7 : 5)) {
      case 0: c.add(Gate::single(GateKind::H, q)); break;
      case 1: c.add(Gate::single(GateKind::S, q)); break;
      case 2: c.add(Gate::single(GateKind::T, q)); break;
      case 3: c.add(Gate::single(GateKind::Y, q)); break;
      case 4: c.add(Gate::phase(q, angle(gen))); break;
      case 5: c.add(Gate::cnot(q, r)); break;
      default: c.add(Gate::cz(q, r));
    }
  }
  return c;
}

#ifdef DESIGNLAB_HAVE_CLI
double cli_fp_state(const SetDescriptor& s, int t, const fs::path& dir) {
  const auto path = (dir / "descriptor.json").string();
  save_descriptor(s, path);
  std::ostringstream out, err;
  const int code = cli::run({"fp-state", "--descriptor", path, "--t", std::to_string(t)}, out, err);
  if (code != 0) throw VerificationError("fp-state exited with " + std::to_string(code) + ": " + err.str());
  return nlohmann::json::parse(out.str()).at("F").get<double>();
}
#endif

Outcome criterion1() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "designlab_acceptance_c1";
  fs::create_directories(dir);
  const double want[] = {0.5, 0.375, 0.3125};
  for (std::uint64_t k : {8u, 16u})
    for (int t = 1; t <= 3; ++t) {
      const auto s = phase_state_set(2, k, 1);
#ifdef DESIGNLAB_HAVE_CLI
      const double f = cli_fp_state(s, t, dir);
#else
      const double f = frame_potential(s, t);
#endif
      o.check(near(f, want[t - 1], 1e-10), "m=1 K=" + std::to_string(k) + " t=" + std::to_string(t) + ": " + fmt(f));
    }
  for (std::uint64_t k : {8u, 16u}) {
#ifdef DESIGNLAB_HAVE_CLI
    const double f = cli_fp_state(phase_state_set(3, k, 2), 1, dir);
#else
    const double f = frame_potential(phase_state_set(3, k, 2), 1);
#endif
    o.check(near(f, 0.375, 1e-10), "m=2 K=" + std::to_string(k) + " t=1: " + fmt(f));
  }
  fs::remove_all(dir);
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const auto r = certify(computational_basis_set(n), 1, 0.1, 0.2);
    o.check(r.verdict == Verdict::Certified && r.distance && *r.distance <= 1e-10,
            "basis n=" + std::to_string(n) + " not certified as exact 1-design");
  }
  for (int n = 1; n <= 2; ++n) {
    const auto r = certify(pauli_set(n), 1, 0.1, 0.2);
    o.check(r.verdict == Verdict::Certified && r.distance && *r.distance <= 1e-10,
            "pauli n=" + std::to_string(n) + " not certified as exact unitary 1-design");
  }
  const auto c1 = clifford_set(1);
  for (int t = 1; t <= 3; ++t) {
    const double f = frame_potential(c1, t);
    o.check(near(f, static_cast<double>(factorial(t)), 1e-9),
            "clifford_set(1) F_" + std::to_string(t) + " = " + fmt(f) + ", expected t! = " +
                std::to_string(factorial(t)) + " (Haar value " + fmt(haar_frame_potential(SetKind::Unitary, 2, t)) +
                ")");
  }
  const double dist = unitary_design_distance(c1, 3).distance;
  o.check(dist <= 1e-8, "clifford_set(1) t=3 distance " + fmt(dist));
  const double f2 = frame_potential(clifford_set(2), 2);
  o.check(near(f2, 2.0, 1e-8), "clifford_set(2) F_2 = " + fmt(f2));
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 gen(2024);
  int done = 0;
  while (done < 25) {
    const int n = 1 + static_cast<int>(gen() % 3);
    const int t = 1 + static_cast<int>(gen() % 3);
    const std::uint64_t k = 1 + gen() % 64;
    const bool unitary = gen() % 2 == 1;
    const int kappa = register_width(k);
    if (kappa + (unitary ? 2 : 1) * n * t > 16) continue;
    SetDescriptor s;
    switch (gen() % 3) {
      case 0:
        if (!unitary && n >= 2 && k >= 2) {
          s = phase_state_set(n, k, 1);
          break;
        }
        [[fallthrough]];
      case 1:
        if (!unitary && n >= 2) {
          s = subset_phase_set(random_subset_spec(n, 1 + gen() % (std::uint64_t{1} << n), k, gen()));
          break;
        }
        [[fallthrough]];
      default: {
        std::vector<Circuit> cs;
        for (std::uint64_t j = 0; j < k; ++j) cs.push_back(random_circuit(n, 1 + static_cast<int>(gen() % 6), gen));
        s = explicit_descriptor(unitary ? SetKind::Unitary : SetKind::State, n, std::move(cs));
      }
    }
    const double a = fp_via_purity(s, t);
    const double b = frame_potential(s, t);
    o.check(near(a, b, 1e-9), std::string(kind_name(s.kind)) + " n=" + std::to_string(n) + " K=" +
                                  std::to_string(s.cardinality) + " t=" + std::to_string(t) + ": purity " + fmt(a) +
                                  " vs Gram " + fmt(b));
    ++done;
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal;
  for (int d = 2; d <= 4; ++d)
    for (int t = 1; t <= std::min(d, 3); ++t) {
      const auto m = haar_unitary_moment(d, t);
      const double trace = m.trace().real();
      const auto basis_rank = haar_unitary_moment_basis(d, t).rank;
      o.check(near(trace, static_cast<double>(factorial(t)), 1e-8) && basis_rank == static_cast<int>(factorial(t)),
              "d=" + std::to_string(d) + " t=" + std::to_string(t) + ": trace " + fmt(trace) + ", span rank " +
                  std::to_string(basis_rank));
      for (int r = 0; r < 3; ++r) {
        DenseState v(m.rows());
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(normal(gen), normal(gen));
        const DenseState mv = m * v;
        const double err = (m * mv - mv).norm() / v.norm();
        o.check(err <= 1e-9, "d=" + std::to_string(d) + " t=" + std::to_string(t) + " not idempotent: " + fmt(err));
      }
    }
  const double diff = max_abs_diff(unitary_moment(clifford_set(1), 3), haar_unitary_moment(2, 3));
  o.check(diff <= 1e-9, "Clifford t=3 average differs from the Haar projector by " + fmt(diff));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::uint64_t kb = 8;
  for (int t = 1; t <= 2; ++t) {
    // State, n = 6.
    const int ns = 6, nv = ns - 2;
    const auto base = phase_state_set(ns - 1, kb, 1);
    const double base_fp = phase_state_fp(1, t);
    const auto th = majsat_thresholds(ThresholdProblem::SFP, t, ns, kb + 2, base_fp);
    for (std::uint64_t s = 0; s <= (std::uint64_t{1} << nv); ++s) {
      const auto g = sfp_gadget(BooleanFunction::with_count(nv, s, 100 + s), base, t, base_fp);
      const double f = frame_potential(g.descriptor, t);
      o.check(near(f, g.predicted_fp, 1e-9), "sfp t=" + std::to_string(t) + " s=" + std::to_string(s) + ": " +
                                                   fmt(f) + " vs " + fmt(g.predicted_fp));
      const bool high = s >= th.cut;
      o.check(high ? f >= th.alpha - 1e-12 : f <= th.beta + 1e-12,
              "sfp t=" + std::to_string(t) + " s=" + std::to_string(s) + " on the wrong side of the cut");
    }
    // Unitary, n = 5.
    const int nu = 5, mu = nu - 2;
    const auto ubase = pauli_set(nu - 1);
    const double ubase_fp = frame_potential(ubase, t);
    const auto uth = majsat_thresholds(ThresholdProblem::UFP, t, nu, ubase.cardinality + 2, ubase_fp);
    for (std::uint64_t s = 0; s <= (std::uint64_t{1} << mu); ++s) {
      const auto g = ufp_gadget(BooleanFunction::with_count(mu, s, 200 + s), ubase, t, ubase_fp);
      const double f = frame_potential(g.descriptor, t);
      o.check(near(f, g.predicted_fp, 1e-9 * std::max(1.0, f)),
              "ufp t=" + std::to_string(t) + " s=" + std::to_string(s) + ": " + fmt(f) + " vs " + fmt(g.predicted_fp));
      const bool high = s >= uth.cut;
      o.check(high ? f >= uth.alpha * (1 - 1e-12) : f <= uth.beta * (1 + 1e-12),
              "ufp t=" + std::to_string(t) + " s=" + std::to_string(s) + " on the wrong side of the cut");
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 gen(66);
  for (int i = 0; i < 10; ++i) {
    const Circuit ux = random_circuit(4, 12, gen);
    const auto g = bqp_gadget(ux, 1, 3);
    o.check(near(*g.q1_amplitude, *g.q1_measured, 1e-10),
            "circuit " + std::to_string(i) + ": " + fmt(*g.q1_amplitude) + " vs " + fmt(*g.q1_measured));
    const double f = frame_potential(g.descriptor, 1);
    o.check(near(f, g.predicted_fp, 1e-9), "circuit " + std::to_string(i) + ": Gram " + fmt(f));
  }
  for (int t = 1; t <= 6; ++t) {
    const double want =
        (std::pow(9.0, -t) - std::pow(36.0, -t)) * static_cast<double>(binomial(2 * t - 1, t - 1));
    const double got = bqp_prediction(t, 2.0 / 3.0) - bqp_prediction(t, 1.0 / 3.0);
    o.check(near(got, want, 1e-12), "gap t=" + std::to_string(t) + ": " + fmt(got) + " vs " + fmt(want));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::uint64_t chi = 1 + seed % 8;
    const std::uint64_t k = 1 + (seed / 8) % 8;
    const auto r = subset_phase_count(random_subset_spec(3, chi, k, seed), 1);
    const double rounded = std::round(r.via_frame_potential);
    o.check(std::abs(r.via_frame_potential - rounded) <= 1e-6 &&
                static_cast<std::uint64_t>(rounded) == r.enumerated,
            "seed " + std::to_string(seed) + ": " + std::to_string(r.enumerated) + " vs " + fmt(r.via_frame_potential));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  struct Case {
    std::string name;
    SetDescriptor s;
    double alpha, beta;
  };
  const std::vector<Case> cases = {{"basis(1)", computational_basis_set(1), 0.75, 0.5},
                                   {"pauli_set(1)", pauli_set(1), 2.0, 1.0}};
  for (const auto& c : cases) {
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto r = swap_test_decide(c.s, 1, {c.alpha, c.beta, 100000, seed});
      if (std::abs(r.accept_rate - r.expected_accept) <= 4.0 * r.std_error) ++within;
    }
    o.check(within >= 99, c.name + ": only " + std::to_string(within) + "/100 runs within 4 sigma");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto id = explicit_descriptor(SetKind::Unitary, 1, {Circuit(1)});
  const std::vector<std::pair<std::string, SetDescriptor>> sets = {
      {"{I}", id}, {"pauli_set(1)", pauli_set(1)}, {"clifford_set(1)", clifford_set(1)}};
  for (const auto& [name, s] : sets)
    for (int t = 1; t <= 2; ++t) {
      const auto r = otoc_report(s, t);
      o.check(near(r.direct_value, r.via_fp_value, 1e-9),
              name + " t=" + std::to_string(t) + ": " + fmt(r.direct_value) + " vs " + fmt(r.via_fp_value));
    }
  const auto p2 = otoc_report(pauli_set(2), 1);
  o.check(near(p2.direct_value, p2.via_fp_value, 1e-9), "pauli_set(2) t=1 mismatch");
  const double v = otoc_direct(id, 1);
  o.check(v == 0.25, "{I} t=1 gives " + fmt(v));
  return o;
}

Outcome criterion10() {
  Outcome o;
  ParamFamily fam;
  fam.kind = FamilyKind::PhaseAngles;
  fam.n = 1;
  fam.k = 8;
  fam.free_polar = true;
  MinimizeConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 0;
  const auto trace = minimize(fam, 2, cfg);
  const double f = trace.best.value;
  o.check(f <= 1.0 / 3.0 + 5e-3, "best F_2 = " + fmt(f));
  const double dt = static_cast<double>(sym_dim(2, 2));
  const double delta = dt * std::sqrt(std::max(0.0, f - 1.0 / dt)) * (1 + 1e-9) + 1e-12;
  const auto r = certify(fam.bind(trace.best.theta), 2, delta, 1.0);
  o.check(r.verdict == Verdict::Certified, "not certified at delta = " + fmt(delta) + " (verdict " +
                                               std::string(verdict_name(r.verdict)) + ")");
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::vector<std::pair<std::string, std::pair<Circuit, QubitPerm>>> cases;
  {
    Circuit c(2);
    c.add(Gate::single(GateKind::H, 0));
    cases.push_back({"H under swap", {c, {1, 0}}});
  }
  {
    Circuit c(3);
    c.add(Gate::single(GateKind::H, 0)).add(Gate::single(GateKind::H, 1)).add(Gate::toffoli(0, 1, 2));
    cases.push_back({"Toffoli", {c, {2, 1, 0}}});
  }
  {
    Circuit c(3);
    c.add(Gate::single(GateKind::RESCALED_H, 1)).add(Gate::toffoli(1, 0, 2)).add(Gate::single(GateKind::H, 2));
    cases.push_back({"rescaled H", {c, {1, 2, 0}}});
  }
  for (const auto& [name, cp] : cases) {
    const auto r = path_sum_count(cp.first, cp.second);
    const double direct = path_sum_direct(cp.first, cp.second);
    o.check(r.L <= kMaxPathBits && near(r.reconstructed, direct, 1e-12),
            name + ": " + fmt(r.reconstructed) + " vs " + fmt(direct));
  }
  // Doubled encoding of {|0>, |0>} at t = 1 (one encoder gate keeps L = 20).
  Circuit enc(2);
  enc.add(Gate::single(GateKind::H, 0));
  const auto d = doubled_encoding_circuit(enc, 1, 1, 1);
  const auto r = path_sum_count(d.circuit, d.perm);
  const double f = frame_potential(explicit_descriptor(SetKind::State, 1, {Circuit(1), Circuit(1)}), 1);
  o.check(r.L <= kMaxPathBits && near(r.reconstructed, f, 1e-12) &&
              near(r.reconstructed, path_sum_direct(d.circuit, d.perm), 1e-12),
          "doubled encoding: " + fmt(r.reconstructed) + " vs F = " + fmt(f));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"phase-state closed forms", criterion1},
      {"exact-design certifications", criterion2},
      {"purity equals Gram frame potential", criterion3},
      {"Haar moment projector", criterion4},
      {"SFP/UFP gadget oracle equivalence", criterion5},
      {"BQP gadget", criterion6},
      {"subset-phase counting", criterion7},
      {"swap-test deciders", criterion8},
      {"OTOC identity", criterion9},
      {"variational synthesis", criterion10},
      {"path-sum micro check", criterion11},
  };
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool known = kKnownFailures.count(id) > 0;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first << " ("
              << std::fixed << std::setprecision(2) << secs << " s)" << std::defaultfloat;
    if (!o.pass && known) std::cout << " [known]";
    std::cout << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    if (!o.pass && !known) unexpected = true;
  }
  std::cout.flush();
  return unexpected ? 1 : 0;
}
