#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "correspondence.hpp"
#include "exparse.hpp"
#include "testutil.hpp"

using namespace canonsym;
using namespace testutil;

namespace {

ContactField field_of(const PhaseSpace& s, const std::vector<std::string>& xi,
                      const std::vector<std::string>& pi) {
  std::vector<ExprPtr> xs, ps;
  for (const auto& c : xi) xs.push_back(parse(c, s));
  for (const auto& c : pi) ps.push_back(parse(c, s));
  return ContactField(s, std::move(xs), std::move(ps));
}

// On-shell residual of equation (1,i) or (2,i) computed purely by finite
// differences: jets from the Hamilton equations, field action and total
// derivative from difference quotients.
double numeric_residual(const ContactField& f, const HamiltonianSystem& sys, int i, int which,
                        const std::map<int, double>& pt) {
  const PhaseSpace& s = sys.space();
  const ExprPtr& h = sys.hamiltonian();
  const int n = s.n();

  std::vector<double> xdot(static_cast<std::size_t>(n)), pdot(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    xdot[static_cast<std::size_t>(j)] = fd_partial(h, pt, s.p_id(j));
    pdot[static_cast<std::size_t>(j)] = -fd_partial(h, pt, s.x_id(j));
  }

  auto total = [&](const ExprPtr& e) {
    double acc = fd_partial(e, pt, s.t_id());
    for (int j = 0; j < n; ++j) {
      acc += xdot[static_cast<std::size_t>(j)] * fd_partial(e, pt, s.x_id(j));
      acc += pdot[static_cast<std::size_t>(j)] * fd_partial(e, pt, s.p_id(j));
    }
    return acc;
  };
  // v(dH/dz_i) with second derivatives of H by nested central differences
  auto v_of_gradient = [&](int which_grad) {
    double acc = 0;
    int gi = which_grad == 1 ? s.p_id(i) : s.x_id(i);
    for (int j = 0; j < n; ++j) {
      acc += eval_numeric(f.xi()[static_cast<std::size_t>(j)], pt) * fd_second(h, pt, gi, s.x_id(j));
      acc += eval_numeric(f.pi()[static_cast<std::size_t>(j)], pt) * fd_second(h, pt, gi, s.p_id(j));
    }
    return acc;
  };

  if (which == 1) return total(f.xi()[static_cast<std::size_t>(i)]) - v_of_gradient(1);
  return total(f.pi()[static_cast<std::size_t>(i)]) + v_of_gradient(2);
}

} // namespace

TEST_CASE("apply_field") {
  PhaseSpace s1(1), s2(2);
  CHECK(same_text(s1, apply_field(field_of(s1, {"1"}, {"0"}), P(s1, "x1^2")), "2*x1"));

  ContactField rotation = field_of(s2, {"-x2", "x1"}, {"-p2", "p1"});
  CHECK(norm_zero(apply_field(rotation, P(s2, "x1^2 + x2^2"))));
  CHECK(norm_zero(apply_field(rotation, P(s2, "7"))));
  CHECK_THROWS_AS(apply_field(rotation, P(s2, "xdot1")), Error);
}

TEST_CASE("apply_field satisfies Leibniz") {
  PhaseSpace s(2);
  Rng rng(13);
  auto ids = xp_vars(s, false);
  for (int k = 0; k < 25; ++k) {
    ContactField f(s,
                   {random_poly(s, ids, 2, 3, rng), random_poly(s, ids, 2, 3, rng)},
                   {random_poly(s, ids, 2, 3, rng), random_poly(s, ids, 2, 3, rng)});
    ExprPtr a = random_poly(s, ids, 3, 4, rng);
    ExprPtr b = random_poly(s, ids, 3, 4, rng);
    CHECK(norm_zero(Expr::sum({apply_field(f, Expr::product({a, b})),
                               Expr::negate(Expr::product({a, apply_field(f, b)})),
                               Expr::negate(Expr::product({b, apply_field(f, a)}))})));
  }
}

TEST_CASE("prolongation") {
  PhaseSpace s2(2), s1(1);

  ProlongedField rot = prolong(field_of(s2, {"-x2", "x1"}, {"-p2", "p1"}));
  CHECK(same_text(s2, rot.dxi_dt[0], "-xdot2"));
  CHECK(same_text(s2, rot.dxi_dt[1], "xdot1"));
  CHECK(same_text(s2, rot.dpi_dt[0], "-pdot2"));
  CHECK(same_text(s2, rot.dpi_dt[1], "pdot1"));

  ProlongedField trans = prolong(field_of(s2, {"1", "0"}, {"0", "0"}));
  for (const auto& c : trans.dxi_dt) CHECK(norm_zero(c));
  for (const auto& c : trans.dpi_dt) CHECK(norm_zero(c));

  ProlongedField osc = prolong(field_of(s1, {"p1"}, {"-x1"}));
  CHECK(same_text(s1, osc.dxi_dt[0], "pdot1"));
  CHECK(same_text(s1, osc.dpi_dt[0], "-xdot1"));
}

TEST_CASE("prolongation coefficients are affine in jet variables") {
  PhaseSpace s(2);
  Rng rng(37);
  auto ids = xp_vars(s, true);
  std::vector<int> jets = {s.xdot_id(0), s.xdot_id(1), s.pdot_id(0), s.pdot_id(1)};
  for (int k = 0; k < 10; ++k) {
    ContactField f(s,
                   {random_poly(s, ids, 3, 3, rng), random_poly(s, ids, 3, 3, rng)},
                   {random_poly(s, ids, 3, 3, rng), random_poly(s, ids, 3, 3, rng)});
    ProlongedField pf = prolong(f);
    for (const auto& comp : {pf.dxi_dt, pf.dpi_dt})
      for (const auto& e : comp)
        for (int a : jets)
          for (int b : jets) CHECK(norm_zero(differentiate(differentiate(e, a), b)));
  }
}

TEST_CASE("invariance check examples") {
  PhaseSpace s1(1), s2(2);

  // translation is a symmetry of the constant-force system
  HamiltonianSystem constant_force(s1, P(s1, "p1^2/2 + x1"));
  InvarianceReport trans =
      invariance_check(field_from_integral({P(s1, "p1"), false}, s1), constant_force);
  CHECK(trans.passed);
  for (const auto& eq : trans.equations) CHECK(eq.verdict.status == ZeroStatus::ProvedZero);

  // W = x1*p1 is not a symmetry of the free particle; E1 residual is 2*p1
  HamiltonianSystem free(s1, P(s1, "p1^2/2"));
  InvarianceReport dil =
      invariance_check(field_from_integral({P(s1, "x1*p1"), false}, s1), free);
  CHECK_FALSE(dil.passed);
  REQUIRE(dil.equations.size() == 2);
  CHECK(dil.equations[0].equation == "E1_1");
  CHECK(same_text(s1, dil.equations[0].residual, "2*p1"));
  CHECK(dil.equations[0].verdict.status == ZeroStatus::Nonzero);

  // rotation is a symmetry of the central-force system
  HamiltonianSystem central(s2, P(s2, "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2"));
  InvarianceReport rot =
      invariance_check(field_from_integral({P(s2, "x1*p2 - x2*p1"), false}, s2), central);
  CHECK(rot.passed);
  CHECK(rot.equations.size() == 4);
}

TEST_CASE("invariance residuals agree with the finite-difference on-shell oracle") {
  PhaseSpace s(2);
  HamiltonianSystem central(s, P(s, "(p1^2 + p2^2)/2 + (x1^2 + x2^2)/2"));
  HamiltonianSystem free(s, P(s, "(p1^2 + p2^2)/2"));
  Rng rng(53);

  struct Case {
    const HamiltonianSystem* sys;
    std::string w;
  };
  for (const Case& c : {Case{&central, "x1*p2 - x2*p1"}, Case{&free, "x1*p1"},
                        Case{&central, "p1 + x2^2"}}) {
    ContactField f = field_from_integral({P(s, c.w), false}, s);
    InvarianceReport rep = invariance_check(f, *c.sys);
    for (int trial = 0; trial < 5; ++trial) {
      auto pt = random_point(s, rng);
      for (int i = 0; i < s.n(); ++i) {
        double e1 = eval_numeric(rep.equations[static_cast<std::size_t>(i)].residual, pt);
        double e2 =
            eval_numeric(rep.equations[static_cast<std::size_t>(s.n() + i)].residual, pt);
        CHECK(std::abs(e1 - numeric_residual(f, *c.sys, i, 1, pt)) < 1e-4);
        CHECK(std::abs(e2 - numeric_residual(f, *c.sys, i, 2, pt)) < 1e-4);
      }
    }
  }
}

TEST_CASE("equivalence: invariance passes iff the first-integral test passes") {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + rng.below(2);
    PhaseSpace s(n);
    auto ids = xp_vars(s, true);
    ExprPtr w = random_poly(s, ids, 3, 4, rng);
    HamiltonianSystem sys(s, random_poly(s, ids, 4, 4, rng));

    FirstIntegralResult fit = first_integral_test({w, false}, sys);
    ContactField f = field_from_integral({w, false}, s);
    InvarianceReport inv = invariance_check(f, sys);
    CHECK(fit.verdict.passed() == inv.passed);

    // invariance residuals are the x/p-gradients of the Eq. (1'') residual
    for (int i = 0; i < n; ++i) {
      CHECK(same(inv.equations[static_cast<std::size_t>(i)].residual,
                 differentiate(fit.residual, s.p_id(i))));
      CHECK(same(inv.equations[static_cast<std::size_t>(n + i)].residual,
                 normalize(Expr::negate(differentiate(fit.residual, s.x_id(i))))));
    }
  }
}

TEST_CASE("field validation") {
  PhaseSpace s(2);
  CHECK_THROWS_AS(ContactField(s, {P(s, "1")}, {P(s, "0")}), Error);       // wrong count
  CHECK_THROWS_AS(ContactField(s, {P(s, "xdot1"), P(s, "0")},
                               {P(s, "0"), P(s, "0")}),
                  Error); // jets
}
