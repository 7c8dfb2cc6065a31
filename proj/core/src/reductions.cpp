#include "designlab/reductions.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "designlab/descriptor_json.hpp"
#include "designlab/errors.hpp"
#include "designlab/frame_potential.hpp"
#include "designlab/numerics.hpp"

namespace designlab {

namespace {

// 2^{-m/2} sum_x |x>|f(x)> on m+1 qubits.
std::vector<cplx> f_state(const BooleanFunction& f) {
  const int m = f.n_vars();
  std::vector<cplx> a(std::size_t{2} << m, 0.0);
  const double amp = std::pow(2.0, -0.5 * m);
  for (std::uint64_t x = 0; x < f.size(); ++x) a[(x << 1) | (f(x) ? 1u : 0u)] = amp;
  return a;
}

// |+>^m |1> on m+1 qubits.
std::vector<cplx> p_state(int m) {
  std::vector<cplx> a(std::size_t{2} << m, 0.0);
  const double amp = std::pow(2.0, -0.5 * m);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) a[(x << 1) | 1u] = amp;
  return a;
}

std::vector<int> range(int n) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Base circuit on the leading qubits of an n-qubit circuit, with X gates
// preparing the base's initial basis string.
Circuit embed_base(const SetDescriptor& base, std::uint64_t j, int n) {
  Circuit c(n);
  if (base.kind == SetKind::State) {
    const std::string in = base.input_string();
    for (int q = 0; q < base.n_qubits; ++q)
      if (in[q] == '1') c.add(Gate::single(GateKind::X, q));
  }
  append_shifted(c, base.resolve(j), 0);
  return c;
}

class GadgetResolver : public Resolver {
 public:
  GadgetResolver(std::string name, BooleanFunction f, SetDescriptor base, int n)
      : name_(std::move(name)), f_(std::move(f)), base_(std::move(base)), n_(n) {}

  std::string type() const override { return "gadget:" + name_; }

  Circuit circuit(std::uint64_t index0) const override {
    Circuit c(n_);
    const int m = f_.n_vars();
    if (name_ == "sfp" || name_ == "stdes") {
      if (index0 == 0) {
        c.add(Gate::prepare(range(m + 1), f_state(f_)));
      } else if (index0 == 1) {
        for (int q = 0; q < m; ++q) c.add(Gate::single(GateKind::H, q));
        c.add(Gate::single(GateKind::X, m));
      } else {
        c = embed_base(base_, index0 - 1, n_);
        if (name_ == "sfp") c.add(Gate::single(GateKind::X, n_ - 1));
      }
      return c;
    }
    // ufp / unides: reflections about |f> and |p>.
    if (index0 <= 1) {
      c.add(Gate::reflect(range(m + 1), index0 == 0 ? f_state(f_) : p_state(m)));
      if (name_ == "ufp") c.add(Gate::single(GateKind::Z, n_ - 1));
      return c;
    }
    return embed_base(base_, index0 - 1, n_);
  }

  nlohmann::json params() const override {
    return {{"f", boolean_to_json(f_)}, {"base", descriptor_to_json(base_)}};
  }

 private:
  std::string name_;
  BooleanFunction f_;
  SetDescriptor base_;
  int n_;
};

class BqpResolver : public Resolver {
 public:
  BqpResolver(Circuit ux, std::uint64_t k) : ux_(std::move(ux)), vx_(bqp_vx(ux_)), k_(k) {}
  std::string type() const override { return "gadget:bqp"; }

  Circuit circuit(std::uint64_t index0) const override {
    const int m = ux_.n_qubits;
    Circuit c(m + 2);
    const bool is_v = index0 < k_;
    const std::uint64_t j = (is_v ? index0 : index0 - k_) + 1;
    if (is_v)
      append_shifted(c, vx_, 0);
    else
      c.add(Gate::single(GateKind::X, m));
    c.add(Gate::single(GateKind::H, m + 1));
    c.add(Gate::phase(m + 1, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k_)));
    return c;
  }

  nlohmann::json params() const override { return {{"Ux", circuit_to_json(ux_)}, {"K_phase", k_}}; }

 private:
  Circuit ux_;
  Circuit vx_;
  std::uint64_t k_;
};

double checked_base_fp(const SetDescriptor& base, int t, std::optional<double> supplied) {
  const bool small = base.cardinality <= (std::uint64_t{1} << 12) &&
                     (base.kind == SetKind::State ? base.n_qubits <= kMaxSimQubits
                                                  : base.n_qubits <= kMaxUnitaryQubits);
  if (!supplied) return frame_potential(base, t);
  if (small) {
    const double fp = frame_potential(base, t);
    if (std::abs(fp - *supplied) > 1e-9 * std::max(1.0, std::abs(fp)))
      throw VerificationError("supplied base frame potential " + std::to_string(*supplied) +
                              " disagrees with Gram value " + std::to_string(fp));
  }
  return *supplied;
}

void require_t(int t) {
  if (t < 1) throw DomainError("degree t must be at least 1");
}

}  // namespace

SetDescriptor gadget_descriptor(const std::string& name, const BooleanFunction& f, const SetDescriptor& base) {
  base.validate();
  int n;
  SetKind kind;
  if (name == "sfp" || name == "ufp") {
    n = f.n_vars() + 2;
    kind = name == "sfp" ? SetKind::State : SetKind::Unitary;
    if (base.n_qubits != n - 1)
      throw DomainError("gadget:" + name + ": base set must act on n-1 = " + std::to_string(n - 1) + " qubits");
  } else if (name == "stdes" || name == "unides") {
    n = f.n_vars() + 1;
    kind = name == "stdes" ? SetKind::State : SetKind::Unitary;
    if (base.n_qubits != n)
      throw DomainError("gadget:" + name + ": base design must act on n = " + std::to_string(n) + " qubits");
  } else {
    throw DomainError("unknown gadget '" + name + "'");
  }
  if (base.kind != kind)
    throw DomainError("gadget:" + name + ": base must be a " + std::string(kind_name(kind)) + " set");
  if (n < 2) throw DomainError("gadget:" + name + ": f needs at least one variable");
  if (kind == SetKind::State)
    require_size(n <= kMaxSfpQubits, "state gadget n <= 12", "n = " + std::to_string(n));
  else
    require_size(n <= kMaxUfpQubits, "unitary gadget n <= 10", "n = " + std::to_string(n));
  require_size(base.cardinality + 2 <= kMaxCardinality, "cardinality K <= 2^24",
               "K = " + std::to_string(base.cardinality + 2));

  SetDescriptor s;
  s.kind = kind;
  s.n_qubits = n;
  s.cardinality = base.cardinality + 2;
  s.resolver = std::make_shared<GadgetResolver>(name, f, base, n);
  return s;
}

double sfp_prediction(int n, std::uint64_t k, int t, double base_fp, double s) {
  const double kk = static_cast<double>(k);
  const double r = 1.0 - 2.0 / kk;
  return r * r * base_fp + 2.0 / (kk * kk) * (1.0 + std::pow(std::ldexp(s, -(n - 2)), 2 * t));
}

double ufp_g(int n, int t, double x) {
  return std::pow(std::ldexp(1.0, n) - 8.0 + std::ldexp(x * x, 7 - 2 * n), 2 * t);
}

double ufp_prediction(int n, std::uint64_t k, int t, double base_fp, double s) {
  const double kk = static_cast<double>(k);
  const double r = 1.0 - 2.0 / kk;
  return std::ldexp(r * r * base_fp, 2 * t) + 2.0 / (kk * kk) * (std::ldexp(1.0, 2 * n * t) + ufp_g(n, t, s));
}

GadgetInstance sfp_gadget(const BooleanFunction& f, const SetDescriptor& base, int t, std::optional<double> base_fp) {
  require_t(t);
  GadgetInstance g;
  g.gadget = "sfp";
  g.descriptor = gadget_descriptor("sfp", f, base);
  const int n = g.descriptor.n_qubits;
  g.ingredients = {f, f.sat_count(), g.descriptor.cardinality, n, t, checked_base_fp(base, t, base_fp), 0.0};
  g.predicted_fp = sfp_prediction(n, g.descriptor.cardinality, t, g.ingredients.base_fp,
                                  static_cast<double>(f.sat_count()));
  if (n >= 4) {
    const auto th = majsat_thresholds(ThresholdProblem::SFP, t, n, g.descriptor.cardinality, g.ingredients.base_fp);
    g.thresholds = std::make_pair(th.alpha, th.beta);
  }
  check_bounds(SetKind::State, g.descriptor.dim(), g.descriptor.cardinality, t, g.predicted_fp);
  return g;
}

GadgetInstance ufp_gadget(const BooleanFunction& f, const SetDescriptor& base, int t, std::optional<double> base_fp) {
  require_t(t);
  GadgetInstance g;
  g.gadget = "ufp";
  g.descriptor = gadget_descriptor("ufp", f, base);
  const int n = g.descriptor.n_qubits;
  g.ingredients = {f, f.sat_count(), g.descriptor.cardinality, n, t, checked_base_fp(base, t, base_fp), 0.0};
  g.predicted_fp = ufp_prediction(n, g.descriptor.cardinality, t, g.ingredients.base_fp,
                                  static_cast<double>(f.sat_count()));
  if (n >= 4) {
    const auto th = majsat_thresholds(ThresholdProblem::UFP, t, n, g.descriptor.cardinality, g.ingredients.base_fp);
    g.thresholds = std::make_pair(th.alpha, th.beta);
  }
  check_bounds(SetKind::Unitary, g.descriptor.dim(), g.descriptor.cardinality, t, g.predicted_fp);
  return g;
}

GadgetInstance stdes_gadget(const BooleanFunction& f, const SetDescriptor& base, int t, double delta0) {
  require_t(t);
  if (!(delta0 >= 0.0)) throw DomainError("stdes gadget: delta0 must be nonnegative");
  GadgetInstance g;
  g.gadget = "stdes";
  g.descriptor = gadget_descriptor("stdes", f, base);
  const int n = g.descriptor.n_qubits;
  const auto th = majsat_thresholds(ThresholdProblem::StDes, t, n, g.descriptor.cardinality, 0.0, delta0);
  g.ingredients = {f, f.sat_count(), g.descriptor.cardinality, n, t, haar_frame_potential(SetKind::State, base.dim(), t), delta0};
  g.predicted_fp = th.lb(static_cast<double>(f.sat_count()));
  g.thresholds = std::make_pair(th.delta, th.delta_prime);
  return g;
}

GadgetInstance unides_gadget(const BooleanFunction& f, const SetDescriptor& base, int t, double delta0) {
  require_t(t);
  if (!(delta0 >= 0.0)) throw DomainError("unides gadget: delta0 must be nonnegative");
  GadgetInstance g;
  g.gadget = "unides";
  g.descriptor = gadget_descriptor("unides", f, base);
  const int n = g.descriptor.n_qubits;
  const auto th = majsat_thresholds(ThresholdProblem::UniDes, t, n, g.descriptor.cardinality, 0.0, delta0);
  g.ingredients = {f, f.sat_count(), g.descriptor.cardinality, n, t, haar_frame_potential(SetKind::Unitary, base.dim(), t), delta0};
  g.predicted_fp = th.lb(static_cast<double>(f.sat_count()));
  g.thresholds = std::make_pair(th.delta, th.delta_prime);
  return g;
}

MajsatThresholds majsat_thresholds(ThresholdProblem problem, int t, int n, std::uint64_t k, double base_fp,
                                   double delta0) {
  require_t(t);
  if (k < 3) throw DomainError("majsat thresholds: K must be at least 3");
  if (!(delta0 >= 0.0)) throw DomainError("majsat thresholds: delta0 must be nonnegative");
  MajsatThresholds th;
  th.problem = problem;
  th.n = n;
  th.t = t;
  th.k = k;
  th.base_fp = base_fp;
  th.delta0 = delta0;
  const double kk = static_cast<double>(k);
  const double r2 = (1.0 - 2.0 / kk) * (1.0 - 2.0 / kk);

  switch (problem) {
    case ThresholdProblem::SFP: {
      if (n < 4) throw DomainError("SFP thresholds need n >= 4");
      const double a = r2 * base_fp;
      const double half = std::ldexp(1.0, n - 3);
      th.alpha = a + 2.0 / (kk * kk) * (1.0 + std::pow(2.0, -2.0 * t));
      th.beta = a + 2.0 / (kk * kk) * (1.0 + std::pow((half - 1.0) / (2.0 * half), 2 * t));
      th.gap = th.alpha - th.beta;
      th.gap_lower_bound = t / (std::ldexp(kk * kk, 2 * t - 1) * (std::ldexp(1.0, n - 4) + t));
      th.cut = std::uint64_t{1} << (n - 3);
      return th;
    }
    case ThresholdProblem::UFP: {
      if (n < 4) throw DomainError("UFP thresholds need n >= 4");
      const double a = std::ldexp(r2 * base_fp, 2 * t);
      const double half = std::ldexp(1.0, n - 3);
      const double top = std::ldexp(1.0, 2 * n * t);
      th.alpha = a + 2.0 / (kk * kk) * (top + ufp_g(n, t, half));
      th.beta = a + 2.0 / (kk * kk) * (top + ufp_g(n, t, half - 1.0));
      th.gap = th.alpha - th.beta;
      th.cut = std::uint64_t{1} << (n - 3);
      return th;
    }
    case ThresholdProblem::StDes: {
      if (n < 2) throw DomainError("StDes thresholds need n >= 2");
      const double dt = static_cast<double>(sym_dim(std::uint64_t{1} << n, t));
      const double d0 = delta0;
      th.lb = [=](double x) {
        return 1.0 / dt - 4.0 * d0 / (kk * dt) +
               2.0 / (kk * kk) * (1.0 + std::pow(std::ldexp(x, 1 - n), 2 * t) - 2.0 * (1.0 - 2.0 * d0) / dt);
      };
      th.ub = [=](double x) {
        return (1.0 + d0 * d0) / dt + 4.0 * d0 * (1.0 - d0) / (kk * dt) +
               2.0 / (kk * kk) *
                   (1.0 + std::pow(std::ldexp(x, 1 - n), 2 * t) - 2.0 * (1.0 + d0 * (2.0 - d0)) / dt);
      };
      const double s0p = std::ldexp(1.0, n - 2) - 1.0 / 3.0;
      const double s0 = std::ldexp(1.0, n - 2) - 2.0 / 3.0;
      const double lb_arg = dt * th.lb(s0) - 1.0;
      const double ub_arg = th.ub(s0p) - 1.0 / dt;
      if (lb_arg < 0.0) throw DomainError("StDes thresholds: d_t LB(s0) - 1 < 0, cardinality too large for real delta");
      if (ub_arg < 0.0) throw DomainError("StDes thresholds: UB(s0') < 1/d_t");
      th.delta = std::sqrt(lb_arg);
      th.delta_prime = dt * std::sqrt(ub_arg);
      th.cut = std::uint64_t{1} << (n - 2);
      return th;
    }
    case ThresholdProblem::UniDes: {
      if (n < 2) throw DomainError("UniDes thresholds need n >= 2");
      const double fh = haar_frame_potential(SetKind::Unitary, std::uint64_t{1} << n, t);
      const double top = std::ldexp(1.0, 2 * n * t);
      const double d0 = delta0;
      const auto g = [=](double x) { return std::ldexp(1.0, n) - 4.0 + std::ldexp(x * x, -2 * (n - 2)); };
      th.lb = [=](double x) {
        return fh - 4.0 * d0 / kk + 2.0 / (kk * kk) * (top + std::pow(g(x), 2 * t) - 2.0 * fh + 4.0 * d0);
      };
      th.ub = [=](double x) {
        return fh + d0 * d0 + 4.0 * d0 * (1.0 - d0) / kk +
               2.0 / (kk * kk) * (top + std::pow(g(x), 2 * t) - 2.0 * fh - 2.0 * d0 * (2.0 - d0));
      };
      const double s0p = std::ldexp(1.0, n - 2) - 1.0 / 3.0;
      const double s0 = std::ldexp(1.0, n - 2) - 2.0 / 3.0;
      const double lb_arg = th.lb(s0) - fh;
      const double ub_arg = th.ub(s0p) - fh;
      if (lb_arg < 0.0) throw DomainError("UniDes thresholds: LB(s0) < F_H, cardinality too large for real delta");
      if (ub_arg < 0.0) throw DomainError("UniDes thresholds: UB(s0') < F_H");
      th.delta = std::sqrt(lb_arg);
      th.delta_prime = std::ldexp(std::sqrt(ub_arg), n * t);
      th.cut = std::uint64_t{1} << (n - 2);
      return th;
    }
  }
  throw DomainError("unknown threshold problem");
}

Circuit bqp_vx(const Circuit& ux) {
  const int m = ux.n_qubits;
  if (m < 2) throw DomainError("bqp gadget: U_x needs at least 2 qubits");
  Circuit v(m + 1);
  append_shifted(v, ux, 0);
  v.add(Gate::single(GateKind::H, m));
  v.add(Gate::cz(0, m));
  append_shifted(v, ux.inverse(), 0);
  v.add(Gate::single(GateKind::H, m));
  return v;
}

SetDescriptor bqp_descriptor(const Circuit& ux, std::uint64_t k) {
  ux.validate();
  require_size(ux.n_qubits + 2 <= 20, "bqp gadget m + 2 <= 20", "m = " + std::to_string(ux.n_qubits));
  if (k < 1) throw DomainError("bqp gadget: K must be positive");
  SetDescriptor s;
  s.kind = SetKind::State;
  s.n_qubits = ux.n_qubits + 2;
  s.cardinality = 2 * k;
  s.resolver = std::make_shared<BqpResolver>(ux, k);
  return s;
}

double bqp_prediction(int t, double q1) {
  return (1.0 + std::pow(q1, 2 * t)) * static_cast<double>(binomial(2 * t - 1, t - 1)) / std::pow(4.0, t);
}

GadgetInstance bqp_gadget(const Circuit& ux, int t, std::uint64_t k) {
  require_t(t);
  if (k <= static_cast<std::uint64_t>(t)) throw DomainError("bqp gadget: need K > t");
  GadgetInstance g;
  g.gadget = "bqp";
  g.descriptor = bqp_descriptor(ux, k);
  const int m = ux.n_qubits;

  // q1 from the amplitude <0^m 1|V_x|0^{m+1}>.
  const DenseState v = simulate_state(bqp_vx(ux));
  g.q1_amplitude = std::abs(v(1));
  // q1 as the probability that qubit 0 of U_x|0^m> reads 1.
  const DenseState u = simulate_state(ux);
  double p1 = 0.0;
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i)
    if (i & top) p1 += std::norm(u(static_cast<Eigen::Index>(i)));
  g.q1_measured = p1;

  g.ingredients.k = g.descriptor.cardinality;
  g.ingredients.n = g.descriptor.n_qubits;
  g.ingredients.t = t;
  g.ingredients.base_fp = phase_state_fp(1, t);
  g.predicted_fp = bqp_prediction(t, *g.q1_amplitude);
  const double c = static_cast<double>(binomial(2 * t - 1, t - 1));
  g.thresholds = std::make_pair(c / std::pow(4.0, t) + c / std::pow(9.0, t), c / std::pow(4.0, t) + c / std::pow(36.0, t));
  return g;
}

SubsetCount subset_phase_count(const SubsetPhaseSpec& spec, int t) {
  spec.validate();
  require_t(t);
  const std::uint64_t chi = spec.chi(), k = spec.k();
  // chi^{2t} K^2 must stay exactly representable and enumerable.
  const double total_d = std::pow(static_cast<double>(chi), 2 * t) * static_cast<double>(k * k);
  require_size(total_d <= 0x1p48, "subset count chi^2t K^2 <= 2^48", std::to_string(total_d));
  require_size(total_d <= 0x1p32, "subset enumeration chi^2t K^2 <= 2^32", std::to_string(total_d));

  SubsetCount out;
  std::vector<std::size_t> xs(2 * t, 0);
  for (std::uint64_t j = 0; j < k; ++j)
    for (std::uint64_t l = 0; l < k; ++l) {
      const auto& aj = spec.phases[j];
      const auto& al = spec.phases[l];
      std::fill(xs.begin(), xs.end(), 0);
      while (true) {
        unsigned parity = 0;
        for (auto x : xs) parity ^= static_cast<unsigned>(aj[x]) ^ static_cast<unsigned>(al[x]);
        out.enumerated += parity;
        std::size_t pos = 0;
        while (pos < xs.size() && ++xs[pos] == chi) xs[pos++] = 0;
        if (pos == xs.size()) break;
      }
    }

  out.frame_potential = state_frame_potential(subset_phase_set(spec), t);
  out.via_frame_potential = total_d * (1.0 - out.frame_potential) / 2.0;
  if (std::abs(out.via_frame_potential - static_cast<double>(out.enumerated)) > 0.5)
    throw VerificationError("subset_phase_count: enumeration gives " + std::to_string(out.enumerated) +
                            " but the frame potential gives " + std::to_string(out.via_frame_potential));
  return out;
}

double verify_gadget(const GadgetInstance& g, double tol) {
  const int t = g.ingredients.t;
  const double fp = frame_potential(g.descriptor, t);
  const double slack = tol * std::max(1.0, std::abs(fp));
  if ((g.gadget == "stdes" || g.gadget == "unides") && g.ingredients.delta0 > 0.0) {
    const auto problem = g.gadget == "stdes" ? ThresholdProblem::StDes : ThresholdProblem::UniDes;
    const auto th = majsat_thresholds(problem, t, g.ingredients.n, g.ingredients.k, 0.0, g.ingredients.delta0);
    const double s = static_cast<double>(g.ingredients.s_f.value_or(0));
    if (fp < th.lb(s) - slack || fp > th.ub(s) + slack)
      throw VerificationError(g.gadget + " gadget: frame potential " + std::to_string(fp) + " outside [LB, UB]");
    return fp;
  }
  if (std::abs(fp - g.predicted_fp) > slack)
    throw VerificationError(g.gadget + " gadget: predicted " + std::to_string(g.predicted_fp) +
                            " but the Gram loop gives " + std::to_string(fp));
  return fp;
}

}  // namespace designlab
