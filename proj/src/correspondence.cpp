#include "correspondence.hpp"

#include "exparse.hpp"
#include "poly.hpp"

namespace canonsym {

using detail::Atom;
using detail::Frac;
using detail::Poly;

ContactField field_from_integral(const IntegralCandidate& w, const PhaseSpace& space) {
  require_jet_free(w.w, space, "characteristic function");
  std::vector<ExprPtr> xi, pi;
  for (int i = 0; i < space.n(); ++i) {
    xi.push_back(differentiate(w.w, space.p_id(i)));
    pi.push_back(normalize(Expr::negate(differentiate(w.w, space.x_id(i)))));
  }
  return ContactField(space, std::move(xi), std::move(pi), normalize(w.w));
}

AddendResult normalize_addend(const IntegralCandidate& w, const HamiltonianSystem& sys) {
  const PhaseSpace& space = sys.space();
  ExprPtr r = normalize(Expr::sum(
      {differentiate(w.w, space.t_id()), poisson_bracket(w.w, sys.hamiltonian(), space)}));

  // Gate (1'): the residual must not depend on any x_i or p_i.
  for (int i = 0; i < space.n(); ++i) {
    for (int id : {space.x_id(i), space.p_id(i)}) {
      ExprPtr grad = differentiate(r, id);
      if (!is_zero_constant(grad))
        raise(Errc::NotInvariant, "first-integral residual depends on " + space.name(id) +
                                      ": residual = " + render(r));
    }
  }

  AddendResult out;
  out.residual = r;
  if (is_zero_constant(r)) {
    out.candidate = IntegralCandidate{normalize(w.w), true};
    out.addend = Expr::integer(0);
    return out;
  }

  // Antiderivative of r(t): polynomials in t plus sin/cos/exp of arguments
  // linear in t.
  Frac f = detail::to_frac(r);
  Rational den_c;
  if (!detail::poly_is_const(f.den, &den_c))
    raise(Errc::NoClosedFormAntiderivative,
          "residual has a non-constant denominator: " + render(r));

  const int t_id = space.t_id();
  std::vector<ExprPtr> parts;
  for (const auto& [m, c] : f.num) {
    int t_exp = 0;
    std::vector<std::pair<Atom, int>> t_kernels;
    std::vector<ExprPtr> const_factors;
    for (const auto& [atom, k] : m.factors) {
      if (atom.is_var()) {
        if (atom.var != t_id)
          raise(Errc::Internal, "gated residual mentions a non-time variable");
        t_exp = k;
      } else if (contains_variable(atom.node, t_id)) {
        t_kernels.emplace_back(atom, k);
      } else {
        ExprPtr kf = Expr::function(atom.fn, atom.node);
        const_factors.push_back(k == 1 ? kf : Expr::power(kf, k));
      }
    }

    ExprPtr part;
    if (t_kernels.empty()) {
      // c * C * t^k  ->  c/(k+1) * C * t^(k+1)
      std::vector<ExprPtr> fs;
      fs.push_back(Expr::constant(c / Rational(t_exp + 1)));
      for (auto& cf : const_factors) fs.push_back(cf);
      fs.push_back(Expr::power(space.t(), t_exp + 1));
      part = Expr::product(std::move(fs));
    } else if (t_kernels.size() == 1 && t_kernels[0].second == 1 && t_exp == 0) {
      const Atom& kernel = t_kernels[0].first;
      if (kernel.fn != FuncKind::Sin && kernel.fn != FuncKind::Cos && kernel.fn != FuncKind::Exp)
        raise(Errc::NoClosedFormAntiderivative,
              "no closed-form antiderivative for " + render(r));
      // argument must be linear in t with a constant rational slope
      Frac af = detail::to_frac(kernel.node);
      Rational ad;
      Rational slope = 0;
      bool linear = detail::poly_is_const(af.den, &ad);
      if (linear) {
        for (const auto& [am, ac] : af.num) {
          int k = am.exponent_of_var(t_id);
          if (k == 0) continue;
          if (k > 1 || am.factors.size() != 1) {
            linear = false;
            break;
          }
          slope = ac;
        }
      }
      if (!linear || slope == 0)
        raise(Errc::NoClosedFormAntiderivative,
              "kernel argument is not linear in t: " + render(r));
      ExprPtr anti;
      switch (kernel.fn) {
        case FuncKind::Sin:
          anti = Expr::negate(Expr::function(FuncKind::Cos, kernel.node));
          break;
        case FuncKind::Cos:
          anti = Expr::function(FuncKind::Sin, kernel.node);
          break;
        default:
          anti = Expr::function(FuncKind::Exp, kernel.node);
          break;
      }
      std::vector<ExprPtr> fs;
      fs.push_back(Expr::constant(c / slope));
      for (auto& cf : const_factors) fs.push_back(cf);
      fs.push_back(anti);
      part = Expr::product(std::move(fs));
    } else {
      raise(Errc::NoClosedFormAntiderivative,
            "no closed-form antiderivative for " + render(r));
    }
    parts.push_back(std::move(part));
  }

  ExprPtr g = Expr::sum(std::move(parts));
  if (!(den_c == 1)) g = Expr::quotient(g, Expr::constant(den_c));
  out.addend = normalize(g);
  out.candidate =
      IntegralCandidate{normalize(Expr::sum({w.w, Expr::negate(out.addend)})), true};
  return out;
}

namespace {

// xi(t, a + s(z-a)) for one field component
ExprPtr path_substitute(const ExprPtr& component, const PhaseSpace& space, const ExprPtr& s,
                        const std::vector<Rational>& base) {
  std::map<int, ExprPtr> bindings;
  for (int i = 0; i < space.n(); ++i) {
    auto along = [&](int id, const Rational& a) {
      ExprPtr delta = Expr::sum({space.var(id), Expr::negate(Expr::constant(a))});
      bindings[id] = Expr::sum({Expr::constant(a), Expr::product({s, delta})});
    };
    along(space.x_id(i), base[static_cast<std::size_t>(i)]);
    along(space.p_id(i), base[static_cast<std::size_t>(space.n() + i)]);
  }
  return substitute(component, bindings);
}

} // namespace

ReconstructionResult integral_from_field(const ContactField& f, const HamiltonianSystem& sys,
                                         const std::optional<std::vector<double>>& base_point,
                                         const ProbeConfig& cfg) {
  const PhaseSpace& space = f.space();
  const int n = space.n();

  // Exactness of -pi_i dx_i + xi_i dp_i.
  auto fail = [&](const std::string& what, int i, int j, const ExprPtr& residual) {
    raise(Errc::NotContactField, "mixed-partial condition " + what + " violated for (i,j) = (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                     "): residual " + render(residual));
  };
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    for (int j = i; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      ExprPtr a = normalize(Expr::sum({differentiate(f.xi()[iu], space.p_id(j)),
                                       Expr::negate(differentiate(f.xi()[ju], space.p_id(i)))}));
      if (!is_zero(a, cfg).passed()) fail("dxi_i/dp_j = dxi_j/dp_i", i, j, a);
      ExprPtr b = normalize(Expr::sum({differentiate(f.pi()[iu], space.x_id(j)),
                                       Expr::negate(differentiate(f.pi()[ju], space.x_id(i)))}));
      if (!is_zero(b, cfg).passed()) fail("dpi_i/dx_j = dpi_j/dx_i", i, j, b);
    }
    for (int j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      ExprPtr c = normalize(Expr::sum(
          {differentiate(f.xi()[iu], space.x_id(j)), differentiate(f.pi()[ju], space.p_id(i))}));
      if (!is_zero(c, cfg).passed()) fail("dxi_i/dx_j = -dpi_j/dp_i", i, j, c);
    }
  }

  ReconstructionResult out;

  // Homogeneous fast path: p_i dxi_i/dp_j = 0 and pi_j = -p_i dxi_i/dx_j
  // make W = p_i xi_i the characteristic function.
  bool homogeneous = true;
  for (int j = 0; j < n && homogeneous; ++j) {
    std::vector<ExprPtr> s1, s2;
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      s1.push_back(Expr::product({space.p(i), differentiate(f.xi()[iu], space.p_id(j))}));
      s2.push_back(Expr::product({space.p(i), differentiate(f.xi()[iu], space.x_id(j))}));
    }
    homogeneous = is_zero_constant(normalize(Expr::sum(std::move(s1)))) &&
                  is_zero_constant(normalize(Expr::sum(
                      {f.pi()[static_cast<std::size_t>(j)], Expr::sum(std::move(s2))})));
  }

  ExprPtr w;
  if (homogeneous) {
    std::vector<ExprPtr> terms;
    for (int i = 0; i < n; ++i)
      terms.push_back(Expr::product({space.p(i), f.xi()[static_cast<std::size_t>(i)]}));
    w = normalize(Expr::sum(std::move(terms)));
    out.homogeneous_path = true;
  } else {
    // Line-integral potential from the base point.
    std::vector<Rational> base(static_cast<std::size_t>(2 * n), Rational(0));
    if (base_point) {
      if (base_point->size() != static_cast<std::size_t>(2 * n))
        raise(Errc::BadArgument, "base point needs 2n entries");
      for (std::size_t k = 0; k < base.size(); ++k) base[k] = Rational((*base_point)[k]);
    }
    const int s_id = space.var_count();
    ExprPtr s = Expr::variable(s_id, "s");

    std::vector<ExprPtr> terms;
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      ExprPtr dx = Expr::sum(
          {space.x(i), Expr::negate(Expr::constant(base[iu]))});
      ExprPtr dp = Expr::sum(
          {space.p(i), Expr::negate(Expr::constant(base[static_cast<std::size_t>(n) + iu]))});
      terms.push_back(Expr::negate(
          Expr::product({path_substitute(f.pi()[iu], space, s, base), dx})));
      terms.push_back(Expr::product({path_substitute(f.xi()[iu], space, s, base), dp}));
    }
    Frac integrand = detail::to_frac(Expr::sum(std::move(terms)));

    for (const auto& [m, c] : integrand.num)
      for (const auto& [atom, k] : m.factors)
        if (!atom.is_var() && contains_variable(atom.node, s_id))
          raise(Errc::NonIntegrableAlongPath,
                "path integrand is not polynomial in the path parameter");
    bool den_has_s = false, den_at_zero_vanishes = true;
    for (const auto& [m, c] : integrand.den) {
      bool has = false;
      for (const auto& [atom, k] : m.factors) {
        if (atom.is_var() && atom.var == s_id) has = true;
        if (!atom.is_var() && contains_variable(atom.node, s_id))
          raise(Errc::NonIntegrableAlongPath,
                "path integrand is not polynomial in the path parameter");
      }
      den_has_s = den_has_s || has;
      if (!has) den_at_zero_vanishes = false;
    }
    if (den_has_s) {
      if (den_at_zero_vanishes)
        raise(Errc::BasePointSingular, "field components are singular at the base point");
      raise(Errc::NonIntegrableAlongPath,
            "path integrand is not polynomial in the path parameter");
    }

    Poly integrated;
    for (const auto& [m, c] : integrand.num) {
      int s_exp = 0;
      detail::Monomial rest;
      for (const auto& [atom, k] : m.factors) {
        if (atom.is_var() && atom.var == s_id)
          s_exp = k;
        else
          rest.factors.push_back({atom, k});
      }
      detail::poly_add_term(integrated, rest, c / Rational(s_exp + 1));
    }
    w = detail::frac_to_expr(Frac{std::move(integrated), integrand.den});
  }

  try {
    AddendResult fixed = normalize_addend(IntegralCandidate{w, false}, sys);
    out.candidate = fixed.candidate;
    out.addend_normalized = true;
    out.removed_addend = fixed.addend;
  } catch (const Error& err) {
    if (err.code() != Errc::NotInvariant && err.code() != Errc::NoClosedFormAntiderivative)
      throw;
    out.candidate = IntegralCandidate{w, false};
    out.addend_normalized = false;
  }
  return out;
}

LevyCerrutiReport levy_cerruti_split(const IntegralCandidate& w, const HamiltonianSystem& sys,
                                     const ProbeConfig& cfg) {
  const PhaseSpace& space = sys.space();

  auto h_split = split_by_p_degree(sys.hamiltonian(), space);
  for (const auto& [deg, part] : h_split)
    if (deg != 0 && deg != 2)
      raise(Errc::HNotKineticMinusPotential,
            "Hamiltonian has a momentum-degree-" + std::to_string(deg) + " part");
  if (!h_split.count(2))
    raise(Errc::HNotKineticMinusPotential, "Hamiltonian has no quadratic kinetic part");

  LevyCerrutiReport report;
  report.kinetic = h_split[2];
  report.potential = h_split.count(0) ? normalize(Expr::negate(h_split[0])) : Expr::integer(0);

  std::map<int, ExprPtr> w_split;
  try {
    w_split = split_by_p_degree(w.w, space);
  } catch (const Error& err) {
    if (err.code() == Errc::NotPolynomialInMomenta) return report; // not linear homogeneous
    throw;
  }
  if (w_split.size() != 1 || !w_split.count(1)) return report;
  report.is_linear_homogeneous = true;

  for (int i = 0; i < space.n(); ++i)
    report.point_field.push_back(differentiate(w.w, space.p_id(i)));

  ExprPtr residual = normalize(Expr::sum(
      {differentiate(w.w, space.t_id()), poisson_bracket(w.w, sys.hamiltonian(), space)}));
  report.degree_residuals = split_by_p_degree(residual, space);

  auto component = [&](int deg) -> ExprPtr {
    auto it = report.degree_residuals.find(deg);
    return it == report.degree_residuals.end() ? Expr::integer(0) : it->second;
  };
  report.t_admits = is_zero(component(2), cfg);
  report.u_admits = is_zero(component(0), cfg);
  return report;
}

} // namespace canonsym
