#include "fields.hpp"

namespace canonsym {

ContactField::ContactField(PhaseSpace space, std::vector<ExprPtr> xi, std::vector<ExprPtr> pi,
                           std::optional<ExprPtr> characteristic)
    : space_(std::move(space)), xi_(std::move(xi)), pi_(std::move(pi)),
      characteristic_(std::move(characteristic)) {
  const auto n = static_cast<std::size_t>(space_.n());
  if (xi_.size() != n || pi_.size() != n)
    raise(Errc::BadArgument, "field needs exactly n xi and n pi components");
  for (std::size_t i = 0; i < n; ++i) {
    require_jet_free(xi_[i], space_, "field component xi");
    require_jet_free(pi_[i], space_, "field component pi");
  }
  if (characteristic_) require_jet_free(*characteristic_, space_, "characteristic function");
}

ExprPtr apply_field(const ContactField& f, const ExprPtr& e) {
  const PhaseSpace& space = f.space();
  require_jet_free(e, space, "apply_field argument");
  std::vector<ExprPtr> terms;
  for (int i = 0; i < space.n(); ++i) {
    terms.push_back(Expr::product({f.xi()[static_cast<std::size_t>(i)],
                                   differentiate(e, space.x_id(i))}));
    terms.push_back(Expr::product({f.pi()[static_cast<std::size_t>(i)],
                                   differentiate(e, space.p_id(i))}));
  }
  return normalize(Expr::sum(std::move(terms)));
}

ProlongedField prolong(const ContactField& f) {
  ProlongedField out{f, {}, {}};
  for (int i = 0; i < f.space().n(); ++i) {
    out.dxi_dt.push_back(total_derivative(f.xi()[static_cast<std::size_t>(i)], f.space()));
    out.dpi_dt.push_back(total_derivative(f.pi()[static_cast<std::size_t>(i)], f.space()));
  }
  return out;
}

InvarianceReport invariance_check(const ContactField& f, const HamiltonianSystem& sys,
                                  const ProbeConfig& cfg) {
  const PhaseSpace& space = sys.space();
  ProlongedField pf = prolong(f);
  InvarianceReport report;
  report.passed = true;
  for (int i = 0; i < space.n(); ++i) {
    ExprPtr r1 = on_shell_reduce(
        Expr::sum({pf.dxi_dt[static_cast<std::size_t>(i)],
                   Expr::negate(apply_field(f, sys.dH_dp(i)))}),
        sys);
    EquationVerdict v1{"E1_" + std::to_string(i + 1), r1, is_zero(r1, cfg)};
    report.passed = report.passed && v1.verdict.passed();
    report.equations.push_back(std::move(v1));
  }
  for (int i = 0; i < space.n(); ++i) {
    ExprPtr r2 = on_shell_reduce(
        Expr::sum({pf.dpi_dt[static_cast<std::size_t>(i)], apply_field(f, sys.dH_dx(i))}), sys);
    EquationVerdict v2{"E2_" + std::to_string(i + 1), r2, is_zero(r2, cfg)};
    report.passed = report.passed && v2.verdict.passed();
    report.equations.push_back(std::move(v2));
  }
  return report;
}

} // namespace canonsym
