#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exparse.hpp"
#include "testutil.hpp"

using namespace canonsym;
using namespace testutil;

TEST_CASE("differentiate") {
  PhaseSpace s(1);
  CHECK(same_text(s, differentiate(P(s, "p1^2/2"), s.p_id(0)), "p1"));
  CHECK(same_text(s, differentiate(P(s, "sin(x1)*p1"), s.x_id(0)), "cos(x1)*p1"));
  CHECK(same_text(s, differentiate(P(s, "x1 - p1*t"), s.t_id()), "-p1"));
  CHECK(same_text(s, differentiate(P(s, "log(x1)"), s.x_id(0)), "1/x1"));
  CHECK(same_text(s, differentiate(P(s, "sqrt(x1)"), s.x_id(0)), "1/(2*sqrt(x1))"));
  CHECK(same_text(s, differentiate(P(s, "exp(2*x1)"), s.x_id(0)), "2*exp(2*x1)"));
}

TEST_CASE("differentiate commutes with normalize") {
  PhaseSpace s(2);
  Rng rng(3);
  auto ids = xp_vars(s, true);
  for (int k = 0; k < 50; ++k) {
    ExprPtr e = random_poly(s, ids, 4, 6, rng);
    int v = ids[static_cast<std::size_t>(rng.below(static_cast<int>(ids.size())))];
    CHECK(same(differentiate(e, v), differentiate(normalize(e), v)));
  }
}

TEST_CASE("substitute is simultaneous") {
  PhaseSpace s(1);
  CHECK(same_text(s, substitute(P(s, "x1*p1"), {{s.x_id(0), Expr::integer(2)}}), "2*p1"));
  // swap must not cascade
  ExprPtr swapped =
      substitute(P(s, "x1 + 2*p1"), {{s.x_id(0), s.p(0)}, {s.p_id(0), s.x(0)}});
  CHECK(same_text(s, swapped, "p1 + 2*x1"));
  CHECK(structurally_equal(substitute(P(s, "x1 + x1"), {}), N(s, "2*x1")));
}

TEST_CASE("normalize") {
  PhaseSpace s(1);
  CHECK(render(N(s, "x1 + x1")) == "2*x1");
  CHECK(norm_zero(P(s, "(x1+p1)^2 - x1^2 - 2*x1*p1 - p1^2")));
  ExprPtr pyth = N(s, "sin(x1)^2 + cos(x1)^2");
  CHECK_FALSE(is_constant(pyth)); // kernels stay opaque
  CHECK(pyth->kind() == NodeKind::Sum);
  CHECK(structurally_equal(normalize(pyth), pyth)); // idempotent
}

TEST_CASE("normalize handles the rational fragment uniquely") {
  PhaseSpace s(1);
  CHECK(render(N(s, "(x1^2 - 1)/(x1 - 1)")) == "x1 + 1");
  CHECK(render(N(s, "x1/x1")) == "1");
  CHECK(render(N(s, "(x1 + 1)/(2*x1 + 2)")) == "1/2");
  CHECK(render(N(s, "1/(1/x1)")) == "x1");
  CHECK(render(N(s, "x1^-2")) == "1/x1^2");
  CHECK(render(N(s, "(x1^2 + 2*x1*p1 + p1^2)/(x1 + p1)")) == "x1 + p1");
  CHECK(same(N(s, "sqrt(x1)*sqrt(x1)"), Expr::power(P(s, "sqrt(x1)"), 2)));
  CHECK(same_text(s, differentiate(P(s, "sqrt(x1)^2"), s.x_id(0)), "1"));
  CHECK_THROWS_WITH_AS(normalize(P(s, "1/0")), doctest::Contains("division by zero"), Error);
  CHECK_THROWS_AS(normalize(P(s, "1/(x1 - x1)")), Error);
}

TEST_CASE("is_zero") {
  PhaseSpace s(1);
  CHECK(is_zero(P(s, "x1 - x1")).status == ZeroStatus::ProvedZero);

  ZeroVerdict pyth = is_zero(P(s, "sin(x1)^2 + cos(x1)^2 - 1"));
  CHECK(pyth.status == ZeroStatus::NumericallyZero);
  CHECK(pyth.probes == 32);

  ZeroVerdict nz = is_zero(P(s, "x1*p1"));
  REQUIRE(nz.status == ZeroStatus::Nonzero);
  REQUIRE(nz.witness.count("x1") == 1);
  REQUIRE(nz.witness.count("p1") == 1);
  CHECK(std::abs(nz.witness.at("x1") * nz.witness.at("p1") - nz.witness_value) < 1e-12);
  CHECK(std::abs(nz.witness_value) > nz.tolerance);
}

TEST_CASE("is_zero is deterministic per seed") {
  PhaseSpace s(2);
  ExprPtr e = P(s, "x1*p2 - x2*p1 + 1");
  ProbeConfig cfg;
  cfg.seed = 42;
  ZeroVerdict a = is_zero(e, cfg);
  ZeroVerdict b = is_zero(e, cfg);
  REQUIRE(a.status == ZeroStatus::Nonzero);
  CHECK(a.witness == b.witness);
  CHECK(a.witness_value == b.witness_value);
}

TEST_CASE("is_zero never proves a nonzero expression") {
  PhaseSpace s(2);
  Rng rng(19);
  auto ids = xp_vars(s, false);
  for (int k = 0; k < 40; ++k) {
    ExprPtr e = random_poly(s, ids, 3, 4, rng);
    ZeroVerdict v = is_zero(e);
    if (v.status != ZeroStatus::ProvedZero) continue;
    for (int probe = 0; probe < 20; ++probe) {
      auto pt = random_point(s, rng);
      CHECK(std::abs(eval_numeric(e, pt)) < 1e-9);
    }
  }
}

TEST_CASE("split_by_p_degree") {
  PhaseSpace s1(1), s2(2);

  auto split = split_by_p_degree(P(s1, "p1^2/2 - x1^2"), s1);
  REQUIRE(split.size() == 2);
  CHECK(same_text(s1, split.at(2), "p1^2/2"));
  CHECK(same_text(s1, split.at(0), "-x1^2"));

  auto hom = split_by_p_degree(P(s2, "x1*p2 - x2*p1"), s2);
  REQUIRE(hom.size() == 1);
  CHECK(same_text(s2, hom.at(1), "x1*p2 - x2*p1"));

  CHECK_THROWS_AS(split_by_p_degree(P(s1, "sin(p1)"), s1), Error);
  CHECK_THROWS_AS(split_by_p_degree(P(s1, "x1/p1"), s1), Error);
  CHECK(split_by_p_degree(P(s1, "sin(x1)*p1 + 1/x1"), s1).size() == 2);
}

TEST_CASE("split components sum back and are homogeneous") {
  PhaseSpace s(2);
  Rng rng(23);
  auto ids = xp_vars(s, true);
  for (int k = 0; k < 30; ++k) {
    ExprPtr e = random_poly(s, ids, 4, 6, rng);
    auto split = split_by_p_degree(e, s);
    std::vector<ExprPtr> parts;
    for (const auto& [deg, comp] : split) parts.push_back(comp);
    CHECK(same(Expr::sum(std::move(parts)), e));

    // scaling p -> 2p multiplies the degree-d component by 2^d
    for (const auto& [deg, comp] : split) {
      std::map<int, ExprPtr> scale;
      for (int i = 0; i < s.n(); ++i)
        scale[s.p_id(i)] = Expr::product({Expr::integer(2), s.p(i)});
      ExprPtr scaled = substitute(comp, scale);
      auto pt = random_point(s, rng);
      double lhs = eval_numeric(scaled, pt);
      double rhs = std::pow(2.0, deg) * eval_numeric(comp, pt);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(rhs)));
    }
  }
}

TEST_CASE("eval_numeric") {
  PhaseSpace s(1);
  CHECK(eval_numeric(P(s, "p1^2/2"), {{s.p_id(0), 2.0}}) == doctest::Approx(2.0));
  CHECK(eval_numeric(P(s, "x1 + p1"), {{s.x_id(0), 1.0}, {s.p_id(0), -1.0}}) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(eval_numeric(P(s, "log(x1)"), {{s.x_id(0), 0.0}}), Error);
  CHECK_THROWS_AS(eval_numeric(P(s, "sqrt(x1)"), {{s.x_id(0), -1.0}}), Error);
  CHECK_THROWS_AS(eval_numeric(P(s, "x1/p1"), {{s.x_id(0), 1.0}, {s.p_id(0), 0.0}}), Error);
  CHECK_THROWS_AS(eval_numeric(P(s, "x1 + p1"), {{s.x_id(0), 1.0}}), Error); // unbound
}

TEST_CASE("finite differences confirm symbolic derivatives") {
  PhaseSpace s(2);
  Rng rng(31);
  auto ids = xp_vars(s, true);
  const double h = 1e-4;
  for (int k = 0; k < 100; ++k) {
    ExprPtr e = random_poly(s, ids, 4, 6, rng);
    int v = ids[static_cast<std::size_t>(rng.below(static_cast<int>(ids.size())))];
    ExprPtr de = differentiate(e, v);
    auto pt = random_point(s, rng);
    double sym = eval_numeric(de, pt);
    double fd = fd_partial(e, pt, v, h);
    CHECK(std::abs(sym - fd) < 1e-6);
  }
}
