#include "symcore.hpp"

#include <cmath>
#include <random>
#include <set>

#include "phase_space.hpp"
#include "poly.hpp"

namespace canonsym {

using detail::Frac;
using detail::Poly;

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sqrt: return "sqrt";
  }
  return "?";
}

std::optional<FuncKind> func_from_name(std::string_view name) {
  if (name == "sin") return FuncKind::Sin;
  if (name == "cos") return FuncKind::Cos;
  if (name == "exp") return FuncKind::Exp;
  if (name == "log") return FuncKind::Log;
  if (name == "sqrt") return FuncKind::Sqrt;
  return std::nullopt;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnexpectedToken: return "UnexpectedToken";
    case Errc::UnexpectedEnd: return "UnexpectedEnd";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DivisionByZeroConstant: return "DivisionByZeroConstant";
    case Errc::NotPolynomialInMomenta: return "NotPolynomialInMomenta";
    case Errc::JetVariablePresent: return "JetVariablePresent";
    case Errc::DomainError: return "DomainError";
    case Errc::ProbeDomainExhausted: return "ProbeDomainExhausted";
    case Errc::NotContactField: return "NotContactField";
    case Errc::BasePointSingular: return "BasePointSingular";
    case Errc::NonIntegrableAlongPath: return "NonIntegrableAlongPath";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NoClosedFormAntiderivative: return "NoClosedFormAntiderivative";
    case Errc::HNotKineticMinusPotential: return "HNotKineticMinusPotential";
    case Errc::WNotLinearHomogeneous: return "WNotLinearHomogeneous";
    case Errc::HNotPolynomial: return "HNotPolynomial";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::NotSeparable: return "NotSeparable";
    case Errc::NewtonDivergence: return "NewtonDivergence";
    case Errc::SchemaError: return "SchemaError";
    case Errc::IoError: return "IoError";
    case Errc::BadArgument: return "BadArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

const char* zero_status_name(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::ProvedZero: return "ProvedZero";
    case ZeroStatus::NumericallyZero: return "NumericallyZero";
    case ZeroStatus::Nonzero: return "Nonzero";
  }
  return "?";
}

// --- factories --------------------------------------------------------------

ExprPtr Expr::constant(Rational value) {
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Constant));
  e->value_ = std::move(value);
  return e;
}

ExprPtr Expr::integer(long long value) { return constant(Rational(value)); }

ExprPtr Expr::variable(int id, std::string name) {
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Variable));
  e->var_id_ = id;
  e->var_name_ = std::move(name);
  return e;
}

ExprPtr Expr::sum(std::vector<ExprPtr> terms) {
  if (terms.empty()) return integer(0);
  if (terms.size() == 1) return terms.front();
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Sum));
  e->children_ = std::move(terms);
  return e;
}

ExprPtr Expr::product(std::vector<ExprPtr> factors) {
  if (factors.empty()) return integer(1);
  if (factors.size() == 1) return factors.front();
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Product));
  e->children_ = std::move(factors);
  return e;
}

ExprPtr Expr::quotient(ExprPtr num, ExprPtr den) {
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Quotient));
  e->children_ = {std::move(num), std::move(den)};
  return e;
}

ExprPtr Expr::negate(ExprPtr inner) {
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Negate));
  e->children_ = {std::move(inner)};
  return e;
}

ExprPtr Expr::power(ExprPtr base, long long exponent) {
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Power));
  e->children_ = {std::move(base)};
  e->exponent_ = exponent;
  return e;
}

ExprPtr Expr::function(FuncKind f, ExprPtr arg) {
  auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Function));
  e->func_ = f;
  e->children_ = {std::move(arg)};
  return e;
}

// --- structural helpers -----------------------------------------------------

int compare(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case NodeKind::Constant:
      return a->value() < b->value() ? -1 : (a->value() > b->value() ? 1 : 0);
    case NodeKind::Variable:
      return a->var_id() < b->var_id() ? -1 : (a->var_id() > b->var_id() ? 1 : 0);
    case NodeKind::Power:
      if (a->exponent() != b->exponent()) return a->exponent() < b->exponent() ? -1 : 1;
      return compare(a->children()[0], b->children()[0]);
    case NodeKind::Function:
      if (a->func() != b->func())
        return static_cast<int>(a->func()) < static_cast<int>(b->func()) ? -1 : 1;
      return compare(a->children()[0], b->children()[0]);
    default: {
      const auto& ka = a->children();
      const auto& kb = b->children();
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ka.size(); ++i) {
        int c = compare(ka[i], kb[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }

void collect_variables(const ExprPtr& e, std::map<int, std::string>& out) {
  if (e->kind() == NodeKind::Variable) {
    out.emplace(e->var_id(), e->var_name());
    return;
  }
  for (const auto& k : e->children()) collect_variables(k, out);
}

bool contains_variable(const ExprPtr& e, int var_id) {
  if (e->kind() == NodeKind::Variable) return e->var_id() == var_id;
  for (const auto& k : e->children())
    if (contains_variable(k, var_id)) return true;
  return false;
}

bool is_zero_constant(const ExprPtr& e) {
  return e->kind() == NodeKind::Constant && e->value() == 0;
}

bool is_constant(const ExprPtr& e, Rational* value) {
  if (e->kind() != NodeKind::Constant) return false;
  if (value) *value = e->value();
  return true;
}

// --- operations --------------------------------------------------------------

ExprPtr normalize(const ExprPtr& e) { return detail::frac_to_expr(detail::to_frac(e)); }

namespace {

ExprPtr diff_tree(const ExprPtr& e, int v) {
  switch (e->kind()) {
    case NodeKind::Constant:
      return Expr::integer(0);
    case NodeKind::Variable:
      return Expr::integer(e->var_id() == v ? 1 : 0);
    case NodeKind::Sum: {
      std::vector<ExprPtr> terms;
      for (const auto& k : e->children()) terms.push_back(diff_tree(k, v));
      return Expr::sum(std::move(terms));
    }
    case NodeKind::Product: {
      std::vector<ExprPtr> terms;
      const auto& ks = e->children();
      for (std::size_t i = 0; i < ks.size(); ++i) {
        std::vector<ExprPtr> fs = ks;
        fs[i] = diff_tree(ks[i], v);
        terms.push_back(Expr::product(std::move(fs)));
      }
      return Expr::sum(std::move(terms));
    }
    case NodeKind::Quotient: {
      const auto& a = e->children()[0];
      const auto& b = e->children()[1];
      ExprPtr num = Expr::sum({Expr::product({diff_tree(a, v), b}),
                               Expr::negate(Expr::product({a, diff_tree(b, v)}))});
      return Expr::quotient(num, Expr::power(b, 2));
    }
    case NodeKind::Negate:
      return Expr::negate(diff_tree(e->children()[0], v));
    case NodeKind::Power: {
      const auto& b = e->children()[0];
      long long k = e->exponent();
      if (k == 0) return Expr::integer(0);
      return Expr::product(
          {Expr::integer(k), Expr::power(b, k - 1), diff_tree(b, v)});
    }
    case NodeKind::Function: {
      const auto& u = e->children()[0];
      ExprPtr du = diff_tree(u, v);
      switch (e->func()) {
        case FuncKind::Sin:
          return Expr::product({Expr::function(FuncKind::Cos, u), du});
        case FuncKind::Cos:
          return Expr::negate(Expr::product({Expr::function(FuncKind::Sin, u), du}));
        case FuncKind::Exp:
          return Expr::product({Expr::function(FuncKind::Exp, u), du});
        case FuncKind::Log:
          return Expr::quotient(du, u);
        case FuncKind::Sqrt:
          return Expr::quotient(
              du, Expr::product({Expr::integer(2), Expr::function(FuncKind::Sqrt, u)}));
      }
      raise(Errc::Internal, "diff_tree: unknown function");
    }
  }
  raise(Errc::Internal, "diff_tree: unknown node kind");
}

ExprPtr subst_tree(const ExprPtr& e, const std::map<int, ExprPtr>& bindings) {
  switch (e->kind()) {
    case NodeKind::Constant:
      return e;
    case NodeKind::Variable: {
      auto it = bindings.find(e->var_id());
      return it == bindings.end() ? e : it->second;
    }
    case NodeKind::Function:
      return Expr::function(e->func(), subst_tree(e->children()[0], bindings));
    case NodeKind::Power:
      return Expr::power(subst_tree(e->children()[0], bindings), e->exponent());
    case NodeKind::Negate:
      return Expr::negate(subst_tree(e->children()[0], bindings));
    case NodeKind::Quotient:
      return Expr::quotient(subst_tree(e->children()[0], bindings),
                            subst_tree(e->children()[1], bindings));
    case NodeKind::Sum:
    case NodeKind::Product: {
      std::vector<ExprPtr> ks;
      ks.reserve(e->children().size());
      for (const auto& k : e->children()) ks.push_back(subst_tree(k, bindings));
      return e->kind() == NodeKind::Sum ? Expr::sum(std::move(ks))
                                        : Expr::product(std::move(ks));
    }
  }
  raise(Errc::Internal, "subst_tree: unknown node kind");
}

} // namespace

ExprPtr differentiate(const ExprPtr& e, int var_id) {
  return normalize(diff_tree(e, var_id));
}

ExprPtr substitute(const ExprPtr& e, const std::map<int, ExprPtr>& bindings) {
  return normalize(subst_tree(e, bindings));
}

// --- numeric evaluation -----------------------------------------------------

namespace {

double pow_ll(double base, long long k) {
  if (k < 0) {
    if (base == 0.0) raise(Errc::DomainError, "zero raised to a negative power");
    return 1.0 / pow_ll(base, -k);
  }
  double r = 1.0, b = base;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return r;
}

double eval_rec(const ExprPtr& e, const std::vector<double>& vals) {
  switch (e->kind()) {
    case NodeKind::Constant:
      return to_double(e->value());
    case NodeKind::Variable: {
      int id = e->var_id();
      if (id < 0 || id >= static_cast<int>(vals.size()) || std::isnan(vals[id]))
        raise(Errc::BadArgument, "unbound variable " + e->var_name());
      return vals[id];
    }
    case NodeKind::Sum: {
      double s = 0;
      for (const auto& k : e->children()) s += eval_rec(k, vals);
      return s;
    }
    case NodeKind::Product: {
      double s = 1;
      for (const auto& k : e->children()) s *= eval_rec(k, vals);
      return s;
    }
    case NodeKind::Quotient: {
      double a = eval_rec(e->children()[0], vals);
      double b = eval_rec(e->children()[1], vals);
      if (b == 0.0) raise(Errc::DomainError, "division by zero");
      return a / b;
    }
    case NodeKind::Negate:
      return -eval_rec(e->children()[0], vals);
    case NodeKind::Power:
      return pow_ll(eval_rec(e->children()[0], vals), e->exponent());
    case NodeKind::Function: {
      double u = eval_rec(e->children()[0], vals);
      switch (e->func()) {
        case FuncKind::Sin: return std::sin(u);
        case FuncKind::Cos: return std::cos(u);
        case FuncKind::Exp: return std::exp(u);
        case FuncKind::Log:
          if (u <= 0.0) raise(Errc::DomainError, "log of non-positive value");
          return std::log(u);
        case FuncKind::Sqrt:
          if (u < 0.0) raise(Errc::DomainError, "sqrt of negative value");
          return std::sqrt(u);
      }
      raise(Errc::Internal, "eval: unknown function");
    }
  }
  raise(Errc::Internal, "eval: unknown node kind");
}

// Magnitude estimate used by the relative zero test: coefficients and
// variables enter by absolute value, kernels by their true value.
double eval_abs(const ExprPtr& e, const std::vector<double>& vals) {
  switch (e->kind()) {
    case NodeKind::Constant:
      return std::abs(to_double(e->value()));
    case NodeKind::Variable:
      return std::abs(eval_rec(e, vals));
    case NodeKind::Sum: {
      double s = 0;
      for (const auto& k : e->children()) s += eval_abs(k, vals);
      return s;
    }
    case NodeKind::Product: {
      double s = 1;
      for (const auto& k : e->children()) s *= eval_abs(k, vals);
      return s;
    }
    case NodeKind::Quotient: {
      double a = eval_abs(e->children()[0], vals);
      double b = eval_rec(e->children()[1], vals);
      if (b == 0.0) raise(Errc::DomainError, "division by zero");
      return a / std::abs(b);
    }
    case NodeKind::Negate:
      return eval_abs(e->children()[0], vals);
    case NodeKind::Power:
      return std::abs(pow_ll(eval_abs(e->children()[0], vals), e->exponent()));
    case NodeKind::Function:
      return std::abs(eval_rec(e, vals));
  }
  raise(Errc::Internal, "eval_abs: unknown node kind");
}

} // namespace

double eval_numeric_ids(const ExprPtr& e, const std::vector<double>& values_by_id) {
  double v = eval_rec(e, values_by_id);
  if (!std::isfinite(v)) raise(Errc::DomainError, "evaluation overflowed");
  return v;
}

double eval_numeric(const ExprPtr& e, const std::map<int, double>& point) {
  int max_id = -1;
  for (const auto& [id, val] : point) max_id = std::max(max_id, id);
  std::vector<double> vals(static_cast<std::size_t>(max_id + 1),
                           std::numeric_limits<double>::quiet_NaN());
  for (const auto& [id, val] : point) vals[static_cast<std::size_t>(id)] = val;
  return eval_numeric_ids(e, vals);
}

// --- zero testing -------------------------------------------------------------

ZeroVerdict is_zero(const ExprPtr& e, const ProbeConfig& cfg) {
  ExprPtr n = normalize(e);
  ZeroVerdict v;
  v.tolerance = cfg.tolerance;
  if (is_zero_constant(n)) {
    v.status = ZeroStatus::ProvedZero;
    return v;
  }

  std::map<int, std::string> vars;
  collect_variables(n, vars);
  int max_id = -1;
  for (const auto& [id, name] : vars) max_id = std::max(max_id, id);

  std::mt19937_64 rng(cfg.seed);
  auto draw_rational = [&rng]() {
    int den = 1 + static_cast<int>(rng() % 64);
    long long span = 4LL * den + 1;
    long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(span)) - 2LL * den;
    return Rational(num, den);
  };

  for (int probe = 0; probe < cfg.probes; ++probe) {
    std::vector<double> vals(static_cast<std::size_t>(max_id + 1),
                             std::numeric_limits<double>::quiet_NaN());
    std::map<std::string, double> point;
    double value = 0, scale = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      point.clear();
      for (const auto& [id, name] : vars) {
        double x = to_double(draw_rational());
        vals[static_cast<std::size_t>(id)] = x;
        point[name] = x;
      }
      try {
        value = eval_rec(n, vals);
        scale = eval_abs(n, vals);
        ok = std::isfinite(value) && std::isfinite(scale);
      } catch (const Error& err) {
        if (err.code() != Errc::DomainError) throw;
      }
    }
    if (!ok)
      raise(Errc::ProbeDomainExhausted,
            "could not draw a valid probe point after repeated attempts");
    if (std::abs(value) > cfg.tolerance * std::max(1.0, scale)) {
      v.status = ZeroStatus::Nonzero;
      v.probes = probe + 1;
      v.witness = std::move(point);
      v.witness_value = value;
      return v;
    }
  }
  v.status = ZeroStatus::NumericallyZero;
  v.probes = cfg.probes;
  return v;
}

// --- momentum-degree splitting ------------------------------------------------

std::map<int, ExprPtr> split_by_p_degree(const ExprPtr& e, const PhaseSpace& space) {
  Frac f = detail::to_frac(e);

  auto kernel_mentions_p = [&](const detail::Atom& a) {
    if (a.is_var()) return false;
    std::map<int, std::string> vars;
    collect_variables(a.node, vars);
    for (const auto& [id, name] : vars)
      if (space.is_momentum(id)) return true;
    return false;
  };

  auto check_poly = [&](const Poly& p, bool deny_var_momenta) {
    for (const auto& [m, c] : p) {
      for (const auto& [atom, k] : m.factors) {
        if (kernel_mentions_p(atom))
          raise(Errc::NotPolynomialInMomenta,
                "momentum variable occurs inside a transcendental kernel");
        if (deny_var_momenta && atom.is_var() && space.is_momentum(atom.var))
          raise(Errc::NotPolynomialInMomenta,
                "momentum variable occurs in a denominator");
      }
    }
  };
  check_poly(f.num, false);
  check_poly(f.den, true);

  std::map<int, Poly> groups;
  for (const auto& [m, c] : f.num) {
    int deg = 0;
    for (const auto& [atom, k] : m.factors)
      if (atom.is_var() && space.is_momentum(atom.var)) deg += k;
    detail::poly_add_term(groups[deg], m, c);
  }

  std::map<int, ExprPtr> out;
  for (auto& [deg, num] : groups) {
    Frac part{std::move(num), f.den};
    out[deg] = detail::frac_to_expr(part);
  }
  return out;
}

} // namespace canonsym
