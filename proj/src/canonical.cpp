#include "canonical.hpp"

namespace canonsym {

HamiltonianSystem::HamiltonianSystem(PhaseSpace space, ExprPtr hamiltonian)
    : space_(std::move(space)) {
  require_jet_free(hamiltonian, space_, "Hamiltonian");
  h_ = normalize(hamiltonian);
  dh_dx_.reserve(static_cast<std::size_t>(space_.n()));
  dh_dp_.reserve(static_cast<std::size_t>(space_.n()));
  for (int i = 0; i < space_.n(); ++i) {
    dh_dx_.push_back(differentiate(h_, space_.x_id(i)));
    dh_dp_.push_back(differentiate(h_, space_.p_id(i)));
  }
}

ExprPtr poisson_bracket(const ExprPtr& f, const ExprPtr& g, const PhaseSpace& space) {
  require_jet_free(f, space, "bracket argument");
  require_jet_free(g, space, "bracket argument");
  std::vector<ExprPtr> terms;
  for (int i = 0; i < space.n(); ++i) {
    terms.push_back(Expr::product({differentiate(f, space.x_id(i)),
                                   differentiate(g, space.p_id(i))}));
    terms.push_back(Expr::negate(Expr::product({differentiate(f, space.p_id(i)),
                                                differentiate(g, space.x_id(i))})));
  }
  return normalize(Expr::sum(std::move(terms)));
}

ExprPtr total_derivative(const ExprPtr& e, const PhaseSpace& space) {
  require_jet_free(e, space, "total derivative argument");
  std::vector<ExprPtr> terms;
  terms.push_back(differentiate(e, space.t_id()));
  for (int i = 0; i < space.n(); ++i) {
    terms.push_back(Expr::product({space.xdot(i), differentiate(e, space.x_id(i))}));
    terms.push_back(Expr::product({space.pdot(i), differentiate(e, space.p_id(i))}));
  }
  return normalize(Expr::sum(std::move(terms)));
}

ExprPtr on_shell_reduce(const ExprPtr& e, const HamiltonianSystem& sys) {
  const PhaseSpace& space = sys.space();
  std::map<int, ExprPtr> bindings;
  for (int i = 0; i < space.n(); ++i) {
    bindings[space.xdot_id(i)] = sys.dH_dp(i);
    bindings[space.pdot_id(i)] = Expr::negate(sys.dH_dx(i));
  }
  return substitute(e, bindings);
}

FirstIntegralResult first_integral_test(const IntegralCandidate& w,
                                        const HamiltonianSystem& sys, const ProbeConfig& cfg) {
  const PhaseSpace& space = sys.space();
  require_jet_free(w.w, space, "integral candidate");
  ExprPtr residual = normalize(
      Expr::sum({differentiate(w.w, space.t_id()),
                 poisson_bracket(w.w, sys.hamiltonian(), space)}));
  FirstIntegralResult out;
  out.residual = residual;
  out.verdict = is_zero(residual, cfg);
  return out;
}

} // namespace canonsym
