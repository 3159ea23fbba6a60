#pragma once

// Shared helpers for the test suites: parsing shorthands, structural
// equality through the normal form, seeded random generators, and the
// finite-difference oracles that cross-check symbolic results.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "exparse.hpp"
#include "phase_space.hpp"
#include "symcore.hpp"

namespace testutil {

using namespace canonsym;

inline ExprPtr P(const PhaseSpace& space, const std::string& text) { return parse(text, space); }
inline ExprPtr N(const PhaseSpace& space, const std::string& text) {
  return normalize(parse(text, space));
}

inline bool norm_zero(const ExprPtr& e) { return is_zero_constant(normalize(e)); }

inline bool same(const ExprPtr& a, const ExprPtr& b) {
  return norm_zero(Expr::sum({a, Expr::negate(b)}));
}

inline bool same_text(const PhaseSpace& space, const ExprPtr& a, const std::string& b) {
  return same(a, parse(b, space));
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}

  int below(int n) { return static_cast<int>(g() % static_cast<std::uint64_t>(n)); }

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double real(double lo, double hi) {
    double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }
};

/// Random polynomial: `terms` monomials over the given variables, integer
/// coefficients in [-3, 3] (never zero), each of degree <= max_degree.
inline ExprPtr random_poly(const PhaseSpace& space, const std::vector<int>& var_ids,
                           int max_degree, int terms, Rng& rng) {
  std::vector<ExprPtr> ts;
  for (int k = 0; k < terms; ++k) {
    long long c = rng.int_in(-3, 3);
    if (c == 0) c = 1;
    std::vector<ExprPtr> fs{Expr::integer(c)};
    int deg = rng.below(max_degree + 1);
    for (int d = 0; d < deg; ++d)
      fs.push_back(space.var(var_ids[static_cast<std::size_t>(rng.below(
          static_cast<int>(var_ids.size())))]));
    ts.push_back(Expr::product(std::move(fs)));
  }
  return normalize(Expr::sum(std::move(ts)));
}

inline std::vector<int> xp_vars(const PhaseSpace& space, bool with_t = false) {
  std::vector<int> ids;
  for (int i = 0; i < space.n(); ++i) {
    ids.push_back(space.x_id(i));
    ids.push_back(space.p_id(i));
  }
  if (with_t) ids.push_back(space.t_id());
  return ids;
}

inline std::map<int, double> random_point(const PhaseSpace& space, Rng& rng, double lo = -1.0,
                                          double hi = 1.0) {
  std::map<int, double> pt;
  for (int id = 0; id < space.var_count(); ++id) pt[id] = rng.real(lo, hi);
  return pt;
}

/// Central-difference partial derivative.
inline double fd_partial(const ExprPtr& e, std::map<int, double> pt, int var, double h = 1e-5) {
  pt[var] += h;
  double up = eval_numeric(e, pt);
  pt[var] -= 2 * h;
  double down = eval_numeric(e, pt);
  return (up - down) / (2 * h);
}

/// Central-difference mixed second partial.
inline double fd_second(const ExprPtr& e, std::map<int, double> pt, int va, int vb,
                        double h = 1e-4) {
  auto at = [&](double da, double db) {
    auto q = pt;
    q[va] += da;
    q[vb] += db;
    return eval_numeric(e, q);
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
}

/// Finite-difference Poisson bracket: the independent term-by-term oracle.
inline double numeric_bracket(const ExprPtr& f, const ExprPtr& g, const PhaseSpace& space,
                              const std::map<int, double>& pt, double h = 1e-5) {
  double acc = 0;
  for (int i = 0; i < space.n(); ++i) {
    acc += fd_partial(f, pt, space.x_id(i), h) * fd_partial(g, pt, space.p_id(i), h);
    acc -= fd_partial(f, pt, space.p_id(i), h) * fd_partial(g, pt, space.x_id(i), h);
  }
  return acc;
}

} // namespace testutil
