#pragma once

// Internal normal-form machinery behind symcore: expanded multivariate
// polynomials over exact rationals in "atoms" (declared variables plus
// transcendental kernels), and canonical fractions of them.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "symcore.hpp"

namespace canonsym::detail {

/// A variable (var >= 0) or a kernel application (var < 0) of fn to a
/// normalized argument. Variables order before kernels.
struct Atom {
  int var = -1;
  FuncKind fn = FuncKind::Sin;
  ExprPtr node; // variable node when var >= 0, normalized kernel arg otherwise

  bool is_var() const { return var >= 0; }
};

int atom_compare(const Atom& a, const Atom& b);

/// Sorted (atom, exponent > 0) factor list; empty list is the unit monomial.
struct Monomial {
  std::vector<std::pair<Atom, int>> factors;

  int total_degree() const;
  int exponent_of_var(int var_id) const;
  bool empty() const { return factors.empty(); }
};

int monomial_lex_compare(const Monomial& a, const Monomial& b);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b);

struct MonomialDescLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return monomial_lex_compare(a, b) > 0;
  }
};

/// Expanded polynomial; iteration order is descending lex, which is also the
/// canonical rendering order. Zero is the empty map.
using Poly = std::map<Monomial, Rational, MonomialDescLess>;

Poly poly_const(const Rational& c);
Poly poly_atom(const Atom& a);
bool poly_is_zero(const Poly& p);
bool poly_is_const(const Poly& p, Rational* value = nullptr);
void poly_add_term(Poly& p, const Monomial& m, const Rational& c);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
Poly poly_pow(const Poly& a, long long k); // k >= 0
int poly_max_degree_of_var(const Poly& p, int var_id);

/// Primitive positive-leading gcd over the rationals-as-integers view;
/// returns the constant 1 polynomial for coprime inputs.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Exact division; raises Internal if d does not divide p.
Poly poly_div_exact(const Poly& p, const Poly& d);

/// Canonical fraction: den is a primitive integer polynomial with positive
/// leading coefficient, coprime to num. den == 1 for the polynomial case.
struct Frac {
  Poly num;
  Poly den = poly_const(1);
};

Frac frac_const(const Rational& c);
Frac frac_add(const Frac& a, const Frac& b);
Frac frac_mul(const Frac& a, const Frac& b);
Frac frac_div(const Frac& a, const Frac& b); // raises DivisionByZeroConstant
Frac frac_neg(const Frac& a);
Frac frac_pow(const Frac& a, long long k);
void frac_reduce(Frac& f);

/// Expression -> canonical fraction (the workhorse of normalize).
Frac to_frac(const ExprPtr& e);

/// Canonical fraction -> canonical expression tree. Deterministic: the tree
/// shape is a function of the fraction alone.
ExprPtr frac_to_expr(const Frac& f);
ExprPtr poly_to_expr(const Poly& p);

} // namespace canonsym::detail
