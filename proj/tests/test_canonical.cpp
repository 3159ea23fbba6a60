#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exparse.hpp"
#include "testutil.hpp"

using namespace canonsym;
using namespace testutil;

TEST_CASE("poisson bracket basics") {
  PhaseSpace s(1);
  CHECK(same_text(s, poisson_bracket(P(s, "x1"), P(s, "p1^2/2"), s), "p1"));
  CHECK(norm_zero(poisson_bracket(P(s, "x1*p1"), P(s, "x1*p1"), s)));
  CHECK_THROWS_AS(poisson_bracket(P(s, "xdot1"), P(s, "p1"), s), Error);
}

TEST_CASE("angular momentum commutes with a central Hamiltonian") {
  PhaseSpace s(2);
  ExprPtr l = P(s, "x1*p2 - x2*p1");
  ExprPtr h = P(s, "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2");
  ExprPtr bracket = poisson_bracket(l, h, s);
  CHECK(norm_zero(bracket));

  // independent term-by-term finite-difference oracle
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    auto pt = random_point(s, rng);
    CHECK(std::abs(numeric_bracket(l, h, s, pt)) < 1e-6);
  }
}

TEST_CASE("bracket agrees with the finite-difference oracle") {
  PhaseSpace s(2);
  Rng rng(17);
  auto ids = xp_vars(s, false);
  for (int k = 0; k < 20; ++k) {
    ExprPtr f = random_poly(s, ids, 3, 4, rng);
    ExprPtr g = random_poly(s, ids, 3, 4, rng);
    ExprPtr sym = poisson_bracket(f, g, s);
    auto pt = random_point(s, rng);
    double expect = numeric_bracket(f, g, s, pt);
    double got = eval_numeric(sym, pt);
    CHECK(std::abs(got - expect) <= 1e-5 * (1 + std::abs(expect)));
  }
}

TEST_CASE("canonical relations") {
  PhaseSpace s(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(norm_zero(poisson_bracket(s.x(i), s.x(j), s)));
      CHECK(norm_zero(poisson_bracket(s.p(i), s.p(j), s)));
      ExprPtr b = poisson_bracket(s.x(i), s.p(j), s);
      if (i == j)
        CHECK(same(b, Expr::integer(1)));
      else
        CHECK(norm_zero(b));
    }
  }
}

TEST_CASE("bracket algebra properties") {
  PhaseSpace s(2);
  Rng rng(29);
  auto ids = xp_vars(s, false);
  for (int k = 0; k < 30; ++k) {
    ExprPtr f = random_poly(s, ids, 3, 4, rng);
    ExprPtr g = random_poly(s, ids, 3, 4, rng);
    ExprPtr w = random_poly(s, ids, 3, 4, rng);

    // antisymmetry
    CHECK(norm_zero(Expr::sum({poisson_bracket(f, g, s), poisson_bracket(g, f, s)})));
    // Leibniz
    CHECK(norm_zero(Expr::sum(
        {poisson_bracket(Expr::product({f, g}), w, s),
         Expr::negate(Expr::product({f, poisson_bracket(g, w, s)})),
         Expr::negate(Expr::product({g, poisson_bracket(f, w, s)}))})));
    // Jacobi
    CHECK(norm_zero(Expr::sum({poisson_bracket(f, poisson_bracket(g, w, s), s),
                               poisson_bracket(g, poisson_bracket(w, f, s), s),
                               poisson_bracket(w, poisson_bracket(f, g, s), s)})));
  }
}

TEST_CASE("total derivative") {
  PhaseSpace s(1);
  CHECK(same_text(s, total_derivative(P(s, "x1"), s), "xdot1"));
  CHECK(same_text(s, total_derivative(P(s, "x1*p1"), s), "xdot1*p1 + x1*pdot1"));
  CHECK(same_text(s, total_derivative(P(s, "x1 - p1*t"), s), "xdot1 - pdot1*t - p1"));
  CHECK_THROWS_AS(total_derivative(P(s, "xdot1"), s), Error);
}

TEST_CASE("on-shell reduction") {
  PhaseSpace s(1);
  HamiltonianSystem free(s, P(s, "p1^2/2"));
  CHECK(norm_zero(on_shell_reduce(P(s, "xdot1 - p1"), free)));

  HamiltonianSystem constant_force(s, P(s, "p1^2/2 + x1"));
  CHECK(same_text(s, on_shell_reduce(P(s, "pdot1"), constant_force), "-1"));

  ExprPtr jet_free = P(s, "x1^2 + p1");
  CHECK(structurally_equal(on_shell_reduce(jet_free, free), normalize(jet_free)));
}

TEST_CASE("first integral test") {
  PhaseSpace s(1);
  HamiltonianSystem constant_force(s, P(s, "p1^2/2 + x1"));
  CHECK(first_integral_test({P(s, "p1^2/2 + x1"), false}, constant_force).verdict.status ==
        ZeroStatus::ProvedZero);

  HamiltonianSystem free(s, P(s, "p1^2/2"));
  CHECK(first_integral_test({P(s, "x1 - p1*t"), false}, free).verdict.status ==
        ZeroStatus::ProvedZero);

  FirstIntegralResult bad = first_integral_test({P(s, "x1"), false}, free);
  CHECK(bad.verdict.status == ZeroStatus::Nonzero);
  CHECK(same_text(s, bad.residual, "p1"));
}

TEST_CASE("bridge identity: total derivative on shell equals dW/dt + {W,H}") {
  PhaseSpace s(2);
  Rng rng(41);
  auto ids = xp_vars(s, true);
  for (int k = 0; k < 25; ++k) {
    ExprPtr w = random_poly(s, ids, 3, 4, rng);
    HamiltonianSystem sys(s, random_poly(s, ids, 3, 4, rng));
    ExprPtr via_jets = on_shell_reduce(total_derivative(w, s), sys);
    ExprPtr via_bracket = normalize(Expr::sum(
        {differentiate(w, s.t_id()), poisson_bracket(w, sys.hamiltonian(), s)}));
    CHECK(same(via_jets, via_bracket));
  }
}

TEST_CASE("hamiltonian system rejects jet variables") {
  PhaseSpace s(1);
  CHECK_THROWS_AS(HamiltonianSystem(s, P(s, "xdot1^2/2")), Error);
}
