#include "discovery.hpp"

#include "poly.hpp"

namespace canonsym {

using detail::Frac;
using detail::Monomial;
using detail::MonomialDescLess;
using detail::Poly;

namespace {

void tuples_of_degree(int slots, int degree, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
  if (slots == 1) {
    current.push_back(degree);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = degree; k >= 0; --k) { // descending lex within a grade
    current.push_back(k);
    tuples_of_degree(slots - 1, degree - k, current, out);
    current.pop_back();
  }
}

} // namespace

AnsatzSpace enumerate_basis(const PhaseSpace& space, int degree, bool include_t,
                            std::size_t max_basis) {
  if (degree < 0) raise(Errc::BadArgument, "ansatz degree must be >= 0");
  const int n = space.n();
  const int slots = 2 * n;

  AnsatzSpace out;
  out.degree = degree;
  out.include_t = include_t;

  for (int grade = 0; grade <= degree * (include_t ? 2 : 1); ++grade) {
    // grade = (x,p)-degree plus t-degree; both are capped by `degree`
    for (int t_deg = 0; t_deg <= (include_t ? degree : 0); ++t_deg) {
      int xp_deg = grade - t_deg;
      if (xp_deg < 0 || xp_deg > degree) continue;
      std::vector<std::vector<int>> tuples;
      std::vector<int> current;
      tuples_of_degree(slots, xp_deg, current, tuples);
      for (const auto& tup : tuples) {
        std::vector<ExprPtr> factors;
        for (int i = 0; i < n; ++i)
          if (tup[static_cast<std::size_t>(i)] > 0)
            factors.push_back(Expr::power(space.x(i), tup[static_cast<std::size_t>(i)]));
        for (int i = 0; i < n; ++i)
          if (tup[static_cast<std::size_t>(n + i)] > 0)
            factors.push_back(Expr::power(space.p(i), tup[static_cast<std::size_t>(n + i)]));
        if (t_deg > 0) factors.push_back(Expr::power(space.t(), t_deg));
        if (factors.empty())
          out.basis.push_back(Expr::integer(1));
        else
          out.basis.push_back(normalize(Expr::product(std::move(factors))));
        if (out.basis.size() > max_basis)
          raise(Errc::DegreeTooLarge, "ansatz basis exceeds " + std::to_string(max_basis) +
                                          " monomials; lower the degree");
      }
    }
  }
  return out;
}

namespace {

// ordering within a grade must match tuples_of_degree: re-sort is avoided by
// construction, but the t-power interleaving above walks grades in a fixed
// order already.

struct RationalMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<Rational>> a;
};

std::size_t complexity(const Rational& q) {
  return numer(q).str().size() + denom(q).str().size();
}

// Gauss-Jordan to reduced row echelon form; returns pivot column per pivot
// row. The pivot chosen in each column is the candidate with the smallest
// numerator/denominator print size (deterministic; RREF is unique anyway).
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t best = m.rows;
    std::size_t best_cost = 0;
    for (std::size_t r = row; r < m.rows; ++r) {
      if (m.a[r][col] == 0) continue;
      std::size_t cost = complexity(m.a[r][col]);
      if (best == m.rows || cost < best_cost) {
        best = r;
        best_cost = cost;
      }
    }
    if (best == m.rows) continue;
    std::swap(m.a[row], m.a[best]);
    Rational inv = Rational(1) / m.a[row][col];
    for (std::size_t c = col; c < m.cols; ++c) m.a[row][c] *= inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.a[r][col] == 0) continue;
      Rational factor = m.a[r][col];
      for (std::size_t c = col; c < m.cols; ++c) m.a[r][c] -= factor * m.a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

} // namespace

IntegralBasis discover_integrals(const HamiltonianSystem& sys, const AnsatzSpace& ansatz,
                                 const ProbeConfig& cfg) {
  const PhaseSpace& space = sys.space();

  Frac hf = detail::to_frac(sys.hamiltonian());
  Rational den_c;
  if (!detail::poly_is_const(hf.den, &den_c))
    raise(Errc::HNotPolynomial, "Hamiltonian has a non-constant denominator");
  for (const auto& [m, c] : hf.num)
    for (const auto& [atom, k] : m.factors)
      if (!atom.is_var())
        raise(Errc::HNotPolynomial, "Hamiltonian contains a transcendental kernel");

  const std::size_t cols = ansatz.basis.size();
  if (cols == 0) raise(Errc::BadArgument, "empty ansatz basis");

  // residual of each basis monomial, as a polynomial coefficient map
  std::map<Monomial, std::size_t, MonomialDescLess> row_of;
  std::vector<std::map<std::size_t, Rational>> columns(cols);
  for (std::size_t a = 0; a < cols; ++a) {
    ExprPtr residual = normalize(
        Expr::sum({differentiate(ansatz.basis[a], space.t_id()),
                   poisson_bracket(ansatz.basis[a], sys.hamiltonian(), space)}));
    Frac rf = detail::to_frac(residual);
    Rational rden;
    if (!detail::poly_is_const(rf.den, &rden) || !(rden == 1))
      raise(Errc::Internal, "polynomial residual expected");
    for (const auto& [m, c] : rf.num) {
      auto [it, inserted] = row_of.try_emplace(m, row_of.size());
      columns[a][it->second] = c;
    }
  }

  RationalMatrix mat;
  mat.rows = row_of.size();
  mat.cols = cols;
  mat.a.assign(mat.rows, std::vector<Rational>(cols, Rational(0)));
  for (std::size_t a = 0; a < cols; ++a)
    for (const auto& [r, c] : columns[a]) mat.a[r][a] = c;

  std::vector<std::size_t> pivot_cols = rref(mat);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  IntegralBasis out;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
      v[pivot_cols[r]] = -mat.a[r][free_col];

    // integer-scale: clear denominators, divide by the gcd of numerators
    Int l = 1, g = 0;
    for (const auto& q : v) {
      if (q == 0) continue;
      l = int_lcm(l, denom(q));
      g = int_gcd(g, numer(q));
    }
    Rational scale = Rational(l) / Rational(g < 0 ? -g : g);

    std::vector<ExprPtr> terms;
    for (std::size_t a = 0; a < cols; ++a) {
      if (v[a] == 0) continue;
      terms.push_back(Expr::product({Expr::constant(v[a] * scale), ansatz.basis[a]}));
    }
    IntegralCandidate cand{normalize(Expr::sum(std::move(terms))), true};

    FirstIntegralResult check = first_integral_test(cand, sys, cfg);
    if (check.verdict.status != ZeroStatus::ProvedZero)
      raise(Errc::Internal, "discovered generator failed re-verification");
    out.generators.push_back(std::move(cand));
  }
  out.dimension = static_cast<int>(out.generators.size());
  return out;
}

} // namespace canonsym
