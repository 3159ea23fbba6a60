#include "numverify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "poly.hpp"

namespace canonsym {

const char* integrator_name(Integrator m) {
  return m == Integrator::Verlet ? "verlet" : "implicit_midpoint";
}

namespace {

// evaluation scratch: state vector (x..., p...) plus time into id-indexed slots
struct Evaluator {
  explicit Evaluator(const PhaseSpace& space)
      : space_(space),
        vals_(static_cast<std::size_t>(space.var_count()),
              std::numeric_limits<double>::quiet_NaN()) {}

  void load(const std::vector<double>& state, double t) {
    const int n = space_.n();
    for (int i = 0; i < n; ++i) {
      vals_[static_cast<std::size_t>(space_.x_id(i))] = state[static_cast<std::size_t>(i)];
      vals_[static_cast<std::size_t>(space_.p_id(i))] = state[static_cast<std::size_t>(n + i)];
    }
    vals_[static_cast<std::size_t>(space_.t_id())] = t;
  }

  double operator()(const ExprPtr& e) const { return eval_numeric_ids(e, vals_); }

  const PhaseSpace& space_;
  std::vector<double> vals_;
};

struct SeparableForm {
  bool ok = false;
  std::vector<double> inv_mass; // dx_i/dt = p_i * inv_mass_i
};

SeparableForm separable_form(const HamiltonianSystem& sys) {
  SeparableForm out;
  const PhaseSpace& space = sys.space();
  std::map<int, ExprPtr> split;
  try {
    split = split_by_p_degree(sys.hamiltonian(), space);
  } catch (const Error&) {
    return out;
  }
  for (const auto& [deg, part] : split)
    if (deg != 0 && deg != 2) return out;
  if (!split.count(2)) return out;

  // kinetic part must be sum c_i p_i^2 with constant c_i > 0, all i present
  detail::Frac f = detail::to_frac(split[2]);
  Rational den_c;
  if (!detail::poly_is_const(f.den, &den_c) || !(den_c == 1)) return out;
  std::vector<Rational> coeff(static_cast<std::size_t>(space.n()), Rational(0));
  for (const auto& [m, c] : f.num) {
    if (m.factors.size() != 1) return out;
    const auto& [atom, k] = m.factors.front();
    if (!atom.is_var() || !space.is_momentum(atom.var) || k != 2) return out;
    coeff[static_cast<std::size_t>(atom.var - space.n())] = c;
  }
  for (const auto& c : coeff)
    if (!(c > 0)) return out;

  out.ok = true;
  for (const auto& c : coeff) out.inv_mass.push_back(2.0 * to_double(c));
  return out;
}

int step_count(double t0, double t1, double h) {
  if (h <= 0) raise(Errc::BadArgument, "step size must be positive");
  if (!(t1 > t0)) raise(Errc::BadArgument, "t1 must exceed t0");
  return static_cast<int>(std::ceil((t1 - t0) / h - 1e-12));
}

} // namespace

bool verlet_separable(const HamiltonianSystem& sys) { return separable_form(sys).ok; }

Trajectory integrate_hamilton(const HamiltonianSystem& sys, const std::vector<double>& q0,
                              double t0, double t1, double h, Integrator method) {
  const PhaseSpace& space = sys.space();
  const int n = space.n();
  if (q0.size() != static_cast<std::size_t>(2 * n))
    raise(Errc::BadArgument, "initial state needs 2n entries");

  const int steps = step_count(t0, t1, h);
  Evaluator ev(space);
  ev.load(q0, t0);
  ev(sys.hamiltonian()); // H must be evaluable at the initial state

  Trajectory traj;
  traj.method = method;
  traj.step = h;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.times.push_back(t0);
  traj.states.push_back(q0);

  std::vector<double> z = q0;

  if (method == Integrator::Verlet) {
    SeparableForm form = separable_form(sys);
    if (!form.ok)
      raise(Errc::NotSeparable,
            "verlet needs H = sum p_i^2/(2 m_i) + V(x, t) with constant masses");
    auto force = [&](const std::vector<double>& state, double t, std::vector<double>& out) {
      ev.load(state, t);
      for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = -ev(sys.dH_dx(i));
    };
    std::vector<double> f(static_cast<std::size_t>(n));
    force(z, t0, f);
    for (int k = 0; k < steps; ++k) {
      double t = t0 + k * h;
      for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(n + i)] += 0.5 * h * f[static_cast<std::size_t>(i)];
      for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(i)] +=
            h * z[static_cast<std::size_t>(n + i)] * form.inv_mass[static_cast<std::size_t>(i)];
      force(z, t + h, f);
      for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(n + i)] += 0.5 * h * f[static_cast<std::size_t>(i)];
      for (double v : z)
        if (!std::isfinite(v)) raise(Errc::DomainError, "trajectory diverged");
      traj.times.push_back(t0 + (k + 1) * h);
      traj.states.push_back(z);
    }
    return traj;
  }

  // implicit midpoint with fixed-point iteration
  auto rhs = [&](const std::vector<double>& state, double t, std::vector<double>& out) {
    ev.load(state, t);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = ev(sys.dH_dp(i));
      out[static_cast<std::size_t>(n + i)] = -ev(sys.dH_dx(i));
    }
  };
  std::vector<double> f(static_cast<std::size_t>(2 * n));
  std::vector<double> mid(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < steps; ++k) {
    double t_half = t0 + k * h + 0.5 * h;
    rhs(z, t_half, f);
    std::vector<double> w = z;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += h * f[i];
    bool converged = false;
    for (int it = 0; it < 50 && !converged; ++it) {
      for (std::size_t i = 0; i < w.size(); ++i) mid[i] = 0.5 * (z[i] + w[i]);
      rhs(mid, t_half, f);
      double delta = 0, scale = 0;
      std::vector<double> next = z;
      for (std::size_t i = 0; i < w.size(); ++i) {
        next[i] += h * f[i];
        delta = std::max(delta, std::abs(next[i] - w[i]));
        scale = std::max(scale, std::abs(next[i]));
      }
      w = std::move(next);
      converged = delta <= 1e-12 * (1.0 + scale);
    }
    if (!converged)
      raise(Errc::NewtonDivergence, "implicit midpoint fixed-point iteration did not converge");
    z = w;
    for (double v : z)
      if (!std::isfinite(v)) raise(Errc::DomainError, "trajectory diverged");
    traj.times.push_back(t0 + (k + 1) * h);
    traj.states.push_back(z);
  }
  return traj;
}

DriftStats drift_report(const IntegralCandidate& w, const Trajectory& traj,
                        const PhaseSpace& space, bool keep_series) {
  if (traj.times.empty()) raise(Errc::BadArgument, "empty trajectory");
  require_jet_free(w.w, space, "drift candidate");
  Evaluator ev(space);
  DriftStats stats;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    ev.load(traj.states[k], traj.times[k]);
    double value = ev(w.w);
    if (k == 0) stats.initial = value;
    double dev = value - stats.initial;
    stats.max_abs_deviation = std::max(stats.max_abs_deviation, std::abs(dev));
    stats.final_deviation = dev;
    if (keep_series) stats.values.push_back(value);
  }
  return stats;
}

namespace {

// flow of the symmetry field (xi, pi) in its own parameter, at frozen time
std::vector<double> symmetry_flow(const ContactField& field, std::vector<double> z,
                                  double t_frozen, double s, double h) {
  if (s == 0.0) return z;
  const PhaseSpace& space = field.space();
  const int n = space.n();
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(s) / h - 1e-12)));
  const double ds = s / steps;

  Evaluator ev(space);
  auto rhs = [&](const std::vector<double>& state, std::vector<double>& out) {
    ev.load(state, t_frozen);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = ev(field.xi()[static_cast<std::size_t>(i)]);
      out[static_cast<std::size_t>(n + i)] = ev(field.pi()[static_cast<std::size_t>(i)]);
    }
  };
  std::vector<double> f(static_cast<std::size_t>(2 * n));
  std::vector<double> mid(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < steps; ++k) {
    rhs(z, f);
    std::vector<double> w = z;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += ds * f[i];
    bool converged = false;
    for (int it = 0; it < 50 && !converged; ++it) {
      for (std::size_t i = 0; i < w.size(); ++i) mid[i] = 0.5 * (z[i] + w[i]);
      rhs(mid, f);
      double delta = 0, scale = 0;
      std::vector<double> next = z;
      for (std::size_t i = 0; i < w.size(); ++i) {
        next[i] += ds * f[i];
        delta = std::max(delta, std::abs(next[i] - w[i]));
        scale = std::max(scale, std::abs(next[i]));
      }
      w = std::move(next);
      converged = delta <= 1e-12 * (1.0 + scale);
    }
    if (!converged)
      raise(Errc::NewtonDivergence, "symmetry flow fixed-point iteration did not converge");
    z = w;
  }
  return z;
}

} // namespace

CommutationReport flow_commutation_check(const IntegralCandidate& w,
                                         const HamiltonianSystem& sys,
                                         const std::vector<double>& q0, double s, double t0,
                                         double t1, double h, double tolerance) {
  ContactField field = field_from_integral(w, sys.space());
  Integrator method = verlet_separable(sys) ? Integrator::Verlet : Integrator::ImplicitMidpoint;

  // both routes land on the trajectory grid's actual end time
  Trajectory probe = integrate_hamilton(sys, q0, t0, t1, h, method);
  double t_end = probe.times.back();

  std::vector<double> a = symmetry_flow(field, q0, t0, s, h);
  a = integrate_hamilton(sys, a, t0, t1, h, method).states.back();

  std::vector<double> b = symmetry_flow(field, probe.states.back(), t_end, s, h);

  CommutationReport report;
  report.tolerance = tolerance;
  report.symmetry_then_flow = a;
  report.flow_then_symmetry = b;
  for (std::size_t i = 0; i < a.size(); ++i)
    report.max_norm_error = std::max(report.max_norm_error, std::abs(a[i] - b[i]));
  report.passed = report.max_norm_error <= tolerance;
  return report;
}

void write_drift_csv(std::ostream& out, const Trajectory& traj, const DriftStats& stats) {
  if (stats.values.size() != traj.times.size())
    raise(Errc::BadArgument, "drift stats lack the per-step series");
  out << "t,W,deviation\n";
  char buf[128];
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", traj.times[k], stats.values[k],
                  stats.values[k] - stats.initial);
    out << buf << '\n';
  }
}

} // namespace canonsym
