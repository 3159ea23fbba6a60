#pragma once

#include <vector>

#include "phase_space.hpp"
#include "symcore.hpp"

namespace canonsym {

/// A canonical system: dx_i/dt = dH/dp_i, dp_i/dt = -dH/dx_i. The
/// Hamiltonian is normalized on construction and must be jet-free.
class HamiltonianSystem {
public:
  HamiltonianSystem(PhaseSpace space, ExprPtr hamiltonian);

  const PhaseSpace& space() const { return space_; }
  const ExprPtr& hamiltonian() const { return h_; }
  const ExprPtr& dH_dx(int i) const { return dh_dx_.at(static_cast<std::size_t>(i)); }
  const ExprPtr& dH_dp(int i) const { return dh_dp_.at(static_cast<std::size_t>(i)); }

private:
  PhaseSpace space_;
  ExprPtr h_;
  std::vector<ExprPtr> dh_dx_, dh_dp_;
};

/// A candidate first integral W(t, x, p). The flag records whether the
/// first-integral residual is exactly zero (not merely x,p-independent).
struct IntegralCandidate {
  ExprPtr w;
  bool normalized = false;
};

/// {F,G} = sum_i dF/dx_i dG/dp_i - dF/dp_i dG/dx_i, normalized.
ExprPtr poisson_bracket(const ExprPtr& f, const ExprPtr& g, const PhaseSpace& space);

/// d/dt as a total derivative: de/dt + sum xdot_i de/dx_i + pdot_i de/dp_i.
ExprPtr total_derivative(const ExprPtr& e, const PhaseSpace& space);

/// Substitutes xdot_i -> dH/dp_i, pdot_i -> -dH/dx_i, then normalizes.
ExprPtr on_shell_reduce(const ExprPtr& e, const HamiltonianSystem& sys);

struct FirstIntegralResult {
  ZeroVerdict verdict;
  ExprPtr residual; // dW/dt + {W, H}, normalized
};

/// Verdict on dW/dt + {W,H}; zero iff W is a first integral of the system.
FirstIntegralResult first_integral_test(const IntegralCandidate& w, const HamiltonianSystem& sys,
                                        const ProbeConfig& cfg = {});

} // namespace canonsym
