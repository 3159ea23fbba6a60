#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "correspondence.hpp"

namespace canonsym {

enum class Integrator { Verlet, ImplicitMidpoint };
const char* integrator_name(Integrator m);

/// Discrete solution of the canonical system. States are (x1..xn, p1..pn);
/// times are uniformly spaced by the step.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  Integrator method = Integrator::Verlet;
  double step = 0.0;
};

/// True when H = sum p_i^2/(2 m_i) + V(x, t) with constant positive masses;
/// only such systems may use the verlet scheme.
bool verlet_separable(const HamiltonianSystem& sys);

Trajectory integrate_hamilton(const HamiltonianSystem& sys, const std::vector<double>& q0,
                              double t0, double t1, double h, Integrator method);

struct DriftStats {
  double initial = 0.0;
  double max_abs_deviation = 0.0;
  double final_deviation = 0.0;
  std::vector<double> values; // W at every sample; kept when requested
};

DriftStats drift_report(const IntegralCandidate& w, const Trajectory& traj,
                        const PhaseSpace& space, bool keep_series = false);

struct CommutationReport {
  double max_norm_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<double> symmetry_then_flow;
  std::vector<double> flow_then_symmetry;
};

/// Compares (symmetry flow for parameter s, then Hamilton flow to the end
/// time) against (Hamilton flow first, then the symmetry flow evaluated at
/// the matching time). Both flows use the step h as granularity.
CommutationReport flow_commutation_check(const IntegralCandidate& w,
                                         const HamiltonianSystem& sys,
                                         const std::vector<double>& q0, double s, double t0,
                                         double t1, double h, double tolerance);

/// Header `t,W,deviation`, one row per step, 17 significant digits.
void write_drift_csv(std::ostream& out, const Trajectory& traj, const DriftStats& stats);

} // namespace canonsym
