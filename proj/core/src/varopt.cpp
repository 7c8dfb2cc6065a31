#include "designlab/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "designlab/designs.hpp"
#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/parallel.hpp"
#include "designlab/rng.hpp"

namespace designlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

void euler(Circuit& c, int q, const double* a) {
  c.add(Gate::phase(q, a[0]));
  c.add(Gate::single(GateKind::H, q));
  c.add(Gate::phase(q, a[1]));
  c.add(Gate::single(GateKind::H, q));
  c.add(Gate::phase(q, a[2]));
}

}  // namespace

std::string_view family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::PhaseAngles: return "PHASE_ANGLES";
    case FamilyKind::SubsetPhases: return "SUBSET_PHASES";
    case FamilyKind::RotationCircuit: return "ROTATION_CIRCUIT";
  }
  return "?";
}

FamilyKind family_kind_from_name(std::string_view name) {
  for (auto k : {FamilyKind::PhaseAngles, FamilyKind::SubsetPhases, FamilyKind::RotationCircuit})
    if (family_name(k) == name) return k;
  throw DomainError("unknown parameter family '" + std::string(name) + "'");
}

void ParamFamily::validate() const {
  if (n < 1) throw DomainError("family: n must be at least 1");
  if (k < 1) throw DomainError("family: K must be at least 1");
  require_size(k <= kMaxGramCardinality, "family K <= 2^14", "K = " + std::to_string(k));
  switch (kind) {
    case FamilyKind::PhaseAngles:
      if (set_kind != SetKind::State) throw DomainError("PHASE_ANGLES families are state sets");
      require_size(n <= kMaxSimQubits, "family n <= 24", "n = " + std::to_string(n));
      break;
    case FamilyKind::SubsetPhases: {
      if (set_kind != SetKind::State) throw DomainError("SUBSET_PHASES families are state sets");
      require_size(n <= 12, "subset family n <= 12", "n = " + std::to_string(n));
      if (subset.empty()) throw DomainError("SUBSET_PHASES: subset must be nonempty");
      std::set<std::string> seen;
      for (const auto& s : subset) {
        if (static_cast<int>(s.size()) != n || s.find_first_not_of("01") != std::string::npos)
          throw DomainError("SUBSET_PHASES: '" + s + "' is not an n-bit string");
        if (!seen.insert(s).second) throw DomainError("SUBSET_PHASES: duplicate basis string " + s);
      }
      break;
    }
    case FamilyKind::RotationCircuit:
      if (layers < 1) throw DomainError("ROTATION_CIRCUIT: layers must be at least 1");
      if (set_kind == SetKind::Unitary)
        require_size(n <= kMaxUnitaryQubits, "unitary family n <= 12", "n = " + std::to_string(n));
      else
        require_size(n <= kMaxSimQubits, "family n <= 24", "n = " + std::to_string(n));
      break;
  }
}

std::size_t ParamFamily::param_count() const {
  switch (kind) {
    case FamilyKind::PhaseAngles: return k * static_cast<std::size_t>(n) * (free_polar ? 2 : 1);
    case FamilyKind::SubsetPhases: return k * subset.size();
    case FamilyKind::RotationCircuit: return k * static_cast<std::size_t>(layers) * n * 3;
  }
  return 0;
}

SetDescriptor ParamFamily::bind(const std::vector<double>& theta) const {
  validate();
  if (theta.size() != param_count())
    throw DomainError("family: expected " + std::to_string(param_count()) + " parameters, got " +
                      std::to_string(theta.size()));
  std::vector<double> a(theta.size());
  std::transform(theta.begin(), theta.end(), a.begin(), wrap);

  std::vector<Circuit> circuits;
  circuits.reserve(k);
  for (std::uint64_t j = 0; j < k; ++j) {
    Circuit c(n);
    switch (kind) {
      case FamilyKind::PhaseAngles: {
        const std::size_t per = free_polar ? 2 : 1;
        for (int q = 0; q < n; ++q) {
          const double* p = &a[(j * n + q) * per];
          c.add(Gate::single(GateKind::H, q));
          if (free_polar) {
            c.add(Gate::phase(q, p[0]));
            c.add(Gate::single(GateKind::H, q));
            c.add(Gate::phase(q, p[1]));
          } else {
            c.add(Gate::phase(q, p[0]));
          }
        }
        break;
      }
      case FamilyKind::SubsetPhases: {
        const double amp = 1.0 / std::sqrt(static_cast<double>(subset.size()));
        std::vector<cplx> amps(std::size_t{1} << n, 0.0);
        for (std::size_t x = 0; x < subset.size(); ++x)
          amps[std::stoull(subset[x], nullptr, 2)] = std::polar(amp, a[j * subset.size() + x]);
        std::vector<int> all(n);
        for (int q = 0; q < n; ++q) all[q] = q;
        c.add(Gate::prepare(all, std::move(amps)));
        break;
      }
      case FamilyKind::RotationCircuit: {
        const double* p = &a[j * layers * n * 3];
        for (int l = 0; l < layers; ++l) {
          for (int q = 0; q < n; ++q) euler(c, q, p + (l * n + q) * 3);
          for (int q = 0; q + 1 < n; ++q) c.add(Gate::cz(q, q + 1));
        }
        break;
      }
    }
    circuits.push_back(std::move(c));
  }
  return explicit_descriptor(set_kind, n, std::move(circuits));
}

double ParamFamily::target(int t) const {
  const std::uint64_t d = std::uint64_t{1} << n;
  const double kk = static_cast<double>(k);
  if (set_kind == SetKind::State) return std::max(1.0 / static_cast<double>(sym_dim(d, t)), 1.0 / kk);
  return std::max(haar_frame_potential(SetKind::Unitary, d, t), std::pow(static_cast<double>(d), 2 * t) / kk);
}

nlohmann::json family_to_json(const ParamFamily& fam) {
  nlohmann::json j = {{"family", family_name(fam.kind)},
                      {"kind", kind_name(fam.set_kind)},
                      {"n", fam.n},
                      {"K", fam.k}};
  if (fam.kind == FamilyKind::PhaseAngles) j["free_polar"] = fam.free_polar;
  if (fam.kind == FamilyKind::SubsetPhases) j["subset"] = fam.subset;
  if (fam.kind == FamilyKind::RotationCircuit) j["layers"] = fam.layers;
  return j;
}

ParamFamily family_from_json(const nlohmann::json& j) {
  try {
    ParamFamily f;
    f.kind = family_kind_from_name(j.at("family").get<std::string>());
    const std::string kind = j.value("kind", std::string(f.kind == FamilyKind::RotationCircuit ? "unitary" : "state"));
    if (kind == "state")
      f.set_kind = SetKind::State;
    else if (kind == "unitary")
      f.set_kind = SetKind::Unitary;
    else
      throw DomainError("family: kind must be state or unitary");
    f.n = j.at("n").get<int>();
    f.k = j.at("K").get<std::uint64_t>();
    f.free_polar = j.value("free_polar", false);
    if (j.contains("subset")) f.subset = j.at("subset").get<std::vector<std::string>>();
    f.layers = j.value("layers", 1);
    f.validate();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("family JSON: ") + e.what());
  }
}

double objective(const ParamFamily& fam, const std::vector<double>& theta, int t) {
  return frame_potential(fam.bind(theta), t);
}

std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& x, double h) {
  if (!(h > 0.0)) throw DomainError("fd_gradient: step must be positive");
  std::vector<double> g(x.size());
  std::vector<double> y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] + h;
    const double up = f(y);
    y[i] = x[i] - h;
    const double down = f(y);
    y[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

std::vector<double> fd_gradient(const ParamFamily& fam, const std::vector<double>& theta, int t, double h) {
  return fd_gradient([&](const std::vector<double>& x) { return objective(fam, x, t); }, theta, h);
}

void MinimizeConfig::validate() const {
  if (max_iters < 0) throw DomainError("minimize: max_iters must be nonnegative");
  if (restarts < 1) throw DomainError("minimize: need at least one restart");
  if (!(initial_step > 0.0)) throw DomainError("minimize: initial_step must be positive");
  if (!(armijo > 0.0 && armijo < 1.0)) throw DomainError("minimize: armijo constant must lie in (0, 1)");
  if (!(shrink > 0.0 && shrink < 1.0)) throw DomainError("minimize: shrink must lie in (0, 1)");
  if (!(fd_step > 0.0)) throw DomainError("minimize: fd_step must be positive");
  if (!(tol >= 0.0)) throw DomainError("minimize: tol must be nonnegative");
}

OptTrace minimize(const ParamFamily& fam, int t, const MinimizeConfig& config) {
  fam.validate();
  config.validate();
  if (t < 1) throw DomainError("minimize: t must be at least 1");
  const double target = fam.target(t);
  const std::size_t p = fam.param_count();

  struct Run {
    std::vector<OptIterate> iterates;
    std::string stop;
  };
  std::vector<Run> runs(config.restarts);
  parallel_for(runs.size(), [&](std::size_t r) {
    const CounterRng rng(config.seed, r);
    std::vector<double> x(p);
    for (std::size_t i = 0; i < p; ++i) x[i] = kTwoPi * rng.uniform(i);
    double fx = objective(fam, x, t);
    Run& run = runs[r];
    run.iterates.push_back({x, fx});
    run.stop = "max_iters";
    for (int it = 0; it < config.max_iters; ++it) {
      if (fx - target < config.tol) {
        run.stop = "tolerance";
        break;
      }
      const auto g = fd_gradient(fam, x, t, config.fd_step);
      double g2 = 0.0;
      for (double v : g) g2 += v * v;
      double step = config.initial_step;
      bool accepted = false;
      std::vector<double> y(p);
      while (step >= 1e-12) {
        for (std::size_t i = 0; i < p; ++i) y[i] = wrap(x[i] - step * g[i]);
        const double fy = objective(fam, y, t);
        if (fy <= fx - config.armijo * step * g2) {
          x = y;
          fx = fy;
          accepted = true;
          break;
        }
        step *= config.shrink;
      }
      if (!accepted) {
        run.stop = "step";
        break;
      }
      run.iterates.push_back({x, fx});
    }
    if (run.stop == "max_iters" && fx - target < config.tol) run.stop = "tolerance";
  });

  OptTrace trace;
  trace.target = target;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const double v = runs[r].iterates.back().value;
    trace.restart_values.push_back(v);
    if (r == 0 || v < trace.best.value) {
      trace.best = runs[r].iterates.back();
      trace.best_restart = static_cast<int>(r);
    }
  }
  trace.iterates = std::move(runs[trace.best_restart].iterates);
  trace.stop_reason = runs[trace.best_restart].stop;
  if (trace.best.value < target - 1e-9)
    throw VerificationError("minimize: frame potential " + std::to_string(trace.best.value) +
                            " fell below the lower bound " + std::to_string(target));
  return trace;
}

}  // namespace designlab
