#include "poly.hpp"

#include <algorithm>
#include <cstdlib>

namespace canonsym::detail {

int atom_compare(const Atom& a, const Atom& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) return a.var < b.var ? -1 : (a.var > b.var ? 1 : 0);
  if (a.fn != b.fn) return static_cast<int>(a.fn) < static_cast<int>(b.fn) ? -1 : 1;
  return compare(a.node, b.node);
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.second;
  return d;
}

int Monomial::exponent_of_var(int var_id) const {
  for (const auto& f : factors)
    if (f.first.is_var() && f.first.var == var_id) return f.second;
  return 0;
}

// Lexicographic order over sparse exponent vectors: the first atom (in atom
// order) where the exponents differ decides.
int monomial_lex_compare(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int c = atom_compare(a.factors[i].first, b.factors[j].first);
    if (c < 0) return 1;  // a has a positive power at an earlier atom
    if (c > 0) return -1;
    if (a.factors[i].second != b.factors[j].second)
      return a.factors[i].second > b.factors[j].second ? 1 : -1;
    ++i, ++j;
  }
  if (i < a.factors.size()) return 1;
  if (j < b.factors.size()) return -1;
  return 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int c = atom_compare(a.factors[i].first, b.factors[j].first);
    if (c < 0) {
      out.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      out.factors.push_back(b.factors[j++]);
    } else {
      out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
      ++i, ++j;
    }
  }
  for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
  for (; j < b.factors.size(); ++j) out.factors.push_back(b.factors[j]);
  return out;
}

std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [atom, k] : b.factors) {
    while (i < a.factors.size() && atom_compare(a.factors[i].first, atom) < 0)
      out.factors.push_back(a.factors[i++]);
    if (i >= a.factors.size() || atom_compare(a.factors[i].first, atom) != 0) return std::nullopt;
    if (a.factors[i].second < k) return std::nullopt;
    if (a.factors[i].second > k) out.factors.emplace_back(atom, a.factors[i].second - k);
    ++i;
  }
  for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
  return out;
}

Poly poly_const(const Rational& c) {
  Poly p;
  if (!(c == 0)) p.emplace(Monomial{}, c);
  return p;
}

Poly poly_atom(const Atom& a) {
  Poly p;
  Monomial m;
  m.factors.emplace_back(a, 1);
  p.emplace(std::move(m), Rational(1));
  return p;
}

bool poly_is_zero(const Poly& p) { return p.empty(); }

bool poly_is_const(const Poly& p, Rational* value) {
  if (p.empty()) {
    if (value) *value = 0;
    return true;
  }
  if (p.size() == 1 && p.begin()->first.empty()) {
    if (value) *value = p.begin()->second;
    return true;
  }
  return false;
}

void poly_add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) poly_add_term(out, m, c);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) poly_add_term(out, m, -c);
  return out;
}

Poly poly_neg(const Poly& a) {
  Poly out;
  for (const auto& [m, c] : a) out.emplace(m, -c);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) poly_add_term(out, monomial_mul(ma, mb), ca * cb);
  return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, v] : a) out.emplace(m, v * c);
  return out;
}

Poly poly_pow(const Poly& a, long long k) {
  if (k < 0) raise(Errc::Internal, "poly_pow: negative exponent");
  if (k > 4096) raise(Errc::DegreeTooLarge, "exponent too large for polynomial expansion");
  Poly result = poly_const(1);
  Poly base = a;
  while (k > 0) {
    if (k & 1) result = poly_mul(result, base);
    k >>= 1;
    if (k > 0) base = poly_mul(base, base);
  }
  return result;
}

int poly_max_degree_of_var(const Poly& p, int var_id) {
  int d = 0;
  for (const auto& [m, c] : p) d = std::max(d, m.exponent_of_var(var_id));
  return d;
}

// --- gcd machinery ---------------------------------------------------------

namespace {

Poly mul_term(const Poly& p, const Monomial& m, const Rational& c) {
  Poly out;
  for (const auto& [pm, pc] : p) out.emplace(monomial_mul(pm, m), pc * c);
  return out;
}

// p = content * pp with pp integer-coefficient, coefficient gcd 1 and
// positive leading (desc-lex first) coefficient.
Poly primitive_part(const Poly& p, Rational* content = nullptr) {
  if (p.empty()) {
    if (content) *content = 1;
    return p;
  }
  Int g = 0, l = 1;
  for (const auto& [m, c] : p) {
    g = int_gcd(g, numer(c));
    l = int_lcm(l, denom(c));
  }
  Rational scale(g, l);
  if (p.begin()->second < 0) scale = -scale;
  if (content) *content = scale;
  return poly_scale(p, Rational(1) / scale);
}

// exponent of the main atom -> coefficient polynomial in the remaining atoms
using UniView = std::map<int, Poly>;

UniView uni_view(const Poly& p, const Atom& main) {
  UniView v;
  for (const auto& [m, c] : p) {
    int k = 0;
    Monomial rest;
    for (const auto& f : m.factors) {
      if (atom_compare(f.first, main) == 0)
        k = f.second;
      else
        rest.factors.push_back(f);
    }
    poly_add_term(v[k], rest, c);
  }
  for (auto it = v.begin(); it != v.end();) {
    if (it->second.empty())
      it = v.erase(it);
    else
      ++it;
  }
  return v;
}

Poly uni_collapse(const UniView& v, const Atom& main) {
  Poly out;
  for (const auto& [k, coeff] : v) {
    Monomial mk;
    if (k > 0) mk.factors.emplace_back(main, k);
    for (const auto& [m, c] : coeff) poly_add_term(out, monomial_mul(mk, m), c);
  }
  return out;
}

int uni_degree(const UniView& v) { return v.empty() ? -1 : v.rbegin()->first; }

std::optional<Atom> smallest_atom(const Poly& p) {
  std::optional<Atom> best;
  for (const auto& [m, c] : p) {
    if (m.factors.empty()) continue;
    const Atom& a = m.factors.front().first;
    if (!best || atom_compare(a, *best) < 0) best = a;
  }
  return best;
}

Poly gcd_primitive(Poly A, Poly B);

// gcd of the coefficient polynomials of a univariate view
Poly uni_content(const UniView& v) {
  Poly g;
  for (const auto& [k, coeff] : v) {
    g = g.empty() ? primitive_part(coeff) : gcd_primitive(g, primitive_part(coeff));
    Rational cval;
    if (poly_is_const(g, &cval)) break;
  }
  return g;
}

UniView uni_divide(const UniView& v, const Poly& d) {
  UniView out;
  for (const auto& [k, coeff] : v) out[k] = poly_div_exact(coeff, d);
  return out;
}

// pseudo-remainder of A by B in the main exponent; both viewed univariately
UniView uni_pseudo_rem(UniView A, const UniView& B) {
  const int db = uni_degree(B);
  const Poly& lcB = B.rbegin()->second;
  while (uni_degree(A) >= db) {
    const int da = uni_degree(A);
    Poly lcA = A.rbegin()->second;
    UniView next;
    for (const auto& [k, c] : A) {
      if (k == da) continue; // top term cancels
      next[k] = poly_mul(c, lcB);
    }
    for (const auto& [k, c] : B) {
      if (k == db) continue;
      int kk = k + da - db;
      auto it = next.find(kk);
      Poly sub = poly_mul(c, lcA);
      if (it == next.end())
        next[kk] = poly_neg(sub);
      else
        it->second = poly_sub(it->second, sub);
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.empty())
        it = next.erase(it);
      else
        ++it;
    }
    A = std::move(next);
  }
  return A;
}

// both arguments integer-primitive with positive leading coefficient (or zero)
Poly gcd_primitive(Poly A, Poly B) {
  if (A.empty()) return B.empty() ? poly_const(1) : B;
  if (B.empty()) return A;
  if (poly_is_const(A) || poly_is_const(B)) return poly_const(1);

  auto ma = smallest_atom(A);
  auto mb = smallest_atom(B);
  Atom main = (atom_compare(*ma, *mb) <= 0) ? *ma : *mb;

  UniView va = uni_view(A, main);
  UniView vb = uni_view(B, main);
  if (uni_degree(va) == 0 || uni_degree(vb) == 0) {
    // main is absent from one side; the gcd divides that side's content
    return gcd_primitive(uni_content(va), uni_content(vb));
  }

  Poly ca = uni_content(va);
  Poly cb = uni_content(vb);
  Poly cg = gcd_primitive(ca, cb);
  UniView pa = uni_divide(va, ca);
  UniView pb = uni_divide(vb, cb);
  if (uni_degree(pa) < uni_degree(pb)) std::swap(pa, pb);

  Poly result_main;
  while (true) {
    UniView r = uni_pseudo_rem(pa, pb);
    if (r.empty()) {
      result_main = uni_collapse(pb, main);
      break;
    }
    if (uni_degree(r) == 0) {
      result_main = poly_const(1);
      break;
    }
    Poly rp = primitive_part(uni_collapse(r, main));
    UniView rv = uni_view(rp, main);
    Poly rc = uni_content(rv);
    pa = std::move(pb);
    pb = uni_divide(rv, rc);
  }
  return primitive_part(poly_mul(cg, result_main));
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  return gcd_primitive(primitive_part(a), primitive_part(b));
}

Poly poly_div_exact(const Poly& p, const Poly& d) {
  if (d.empty()) raise(Errc::Internal, "poly_div_exact: division by zero polynomial");
  Poly q;
  Poly r = p;
  const auto& lt_d = *d.begin();
  while (!r.empty()) {
    const auto& lt_r = *r.begin();
    auto m = monomial_div(lt_r.first, lt_d.first);
    if (!m) raise(Errc::Internal, "poly_div_exact: not divisible");
    Rational c = lt_r.second / lt_d.second;
    poly_add_term(q, *m, c);
    r = poly_sub(r, mul_term(d, *m, c));
  }
  return q;
}

// --- fractions -------------------------------------------------------------

Frac frac_const(const Rational& c) { return Frac{poly_const(c), poly_const(1)}; }

void frac_reduce(Frac& f) {
  if (poly_is_zero(f.den)) raise(Errc::DivisionByZeroConstant, "division by zero");
  if (poly_is_zero(f.num)) {
    f.den = poly_const(1);
    return;
  }
  Rational dc;
  Poly dp = primitive_part(f.den, &dc);
  f.den = std::move(dp);
  if (!(dc == 1)) f.num = poly_scale(f.num, Rational(1) / dc);
  if (poly_is_const(f.den)) return; // den is exactly 1 now
  Poly g = poly_gcd(f.num, f.den);
  if (!poly_is_const(g)) {
    f.num = poly_div_exact(f.num, g);
    f.den = poly_div_exact(f.den, g);
  }
}

namespace {
bool den_is_one(const Frac& f) {
  Rational c;
  return poly_is_const(f.den, &c) && c == 1;
}
} // namespace

Frac frac_add(const Frac& a, const Frac& b) {
  if (den_is_one(a) && den_is_one(b)) return Frac{poly_add(a.num, b.num), poly_const(1)};
  Frac out;
  out.num = poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den));
  out.den = poly_mul(a.den, b.den);
  frac_reduce(out);
  return out;
}

Frac frac_mul(const Frac& a, const Frac& b) {
  if (den_is_one(a) && den_is_one(b)) return Frac{poly_mul(a.num, b.num), poly_const(1)};
  Frac out;
  out.num = poly_mul(a.num, b.num);
  out.den = poly_mul(a.den, b.den);
  frac_reduce(out);
  return out;
}

Frac frac_div(const Frac& a, const Frac& b) {
  if (poly_is_zero(b.num)) raise(Errc::DivisionByZeroConstant, "division by zero");
  Frac out;
  out.num = poly_mul(a.num, b.den);
  out.den = poly_mul(a.den, b.num);
  frac_reduce(out);
  return out;
}

Frac frac_neg(const Frac& a) { return Frac{poly_neg(a.num), a.den}; }

Frac frac_pow(const Frac& a, long long k) {
  if (k == 0) return frac_const(1);
  if (k > 0) return Frac{poly_pow(a.num, k), poly_pow(a.den, k)};
  if (poly_is_zero(a.num)) raise(Errc::DivisionByZeroConstant, "zero raised to a negative power");
  Frac inv{a.den, a.num};
  frac_reduce(inv);
  return Frac{poly_pow(inv.num, -k), poly_pow(inv.den, -k)};
}

// --- conversions -----------------------------------------------------------

Frac to_frac(const ExprPtr& e) {
  switch (e->kind()) {
    case NodeKind::Constant:
      return frac_const(e->value());
    case NodeKind::Variable: {
      Atom a;
      a.var = e->var_id();
      a.node = e;
      return Frac{poly_atom(a), poly_const(1)};
    }
    case NodeKind::Sum: {
      Frac acc = frac_const(0);
      for (const auto& k : e->children()) acc = frac_add(acc, to_frac(k));
      return acc;
    }
    case NodeKind::Product: {
      Frac acc = frac_const(1);
      for (const auto& k : e->children()) acc = frac_mul(acc, to_frac(k));
      return acc;
    }
    case NodeKind::Quotient:
      return frac_div(to_frac(e->children()[0]), to_frac(e->children()[1]));
    case NodeKind::Negate:
      return frac_neg(to_frac(e->children()[0]));
    case NodeKind::Power:
      return frac_pow(to_frac(e->children()[0]), e->exponent());
    case NodeKind::Function: {
      Atom a;
      a.var = -1;
      a.fn = e->func();
      a.node = frac_to_expr(to_frac(e->children()[0]));
      return Frac{poly_atom(a), poly_const(1)};
    }
  }
  raise(Errc::Internal, "to_frac: unknown node kind");
}

namespace {

ExprPtr atom_to_expr(const Atom& a) {
  return a.is_var() ? a.node : Expr::function(a.fn, a.node);
}

ExprPtr term_tree(const Monomial& m, const Rational& coeff_abs) {
  Int a = numer(coeff_abs);
  Int b = denom(coeff_abs);
  std::vector<ExprPtr> factors;
  if (a != 1 || m.empty()) factors.push_back(Expr::constant(Rational(a)));
  for (const auto& [atom, k] : m.factors) {
    ExprPtr base = atom_to_expr(atom);
    factors.push_back(k == 1 ? base : Expr::power(base, k));
  }
  ExprPtr core = factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
  if (b != 1) core = Expr::quotient(core, Expr::constant(Rational(b)));
  return core;
}

// Negation spelled without parentheses: push the sign onto the leading
// factor so that "-3*x1^2/2" re-parses to the identical tree.
ExprPtr neg_inline(const ExprPtr& t) {
  switch (t->kind()) {
    case NodeKind::Quotient:
      return Expr::quotient(neg_inline(t->children()[0]), t->children()[1]);
    case NodeKind::Product: {
      std::vector<ExprPtr> kids = t->children();
      kids[0] = neg_inline(kids[0]);
      return Expr::product(std::move(kids));
    }
    default:
      return Expr::negate(t);
  }
}

} // namespace

ExprPtr poly_to_expr(const Poly& p) {
  if (p.empty()) return Expr::integer(0);
  std::vector<ExprPtr> terms;
  terms.reserve(p.size());
  bool first = true;
  for (const auto& [m, c] : p) {
    const bool neg = c < 0;
    ExprPtr t = term_tree(m, neg ? Rational(-c) : c);
    if (neg)
      terms.push_back(first ? neg_inline(t) : Expr::negate(t));
    else
      terms.push_back(std::move(t));
    first = false;
  }
  return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
}

ExprPtr frac_to_expr(const Frac& f) {
  ExprPtr num = poly_to_expr(f.num);
  Rational c;
  if (poly_is_const(f.den, &c)) {
    if (!(c == 1)) raise(Errc::Internal, "frac_to_expr: non-canonical constant denominator");
    return num;
  }
  return Expr::quotient(num, poly_to_expr(f.den));
}

} // namespace canonsym::detail
