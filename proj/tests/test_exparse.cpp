#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exparse.hpp"
#include "testutil.hpp"

using namespace canonsym;
using namespace testutil;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Internal;
}

} // namespace

TEST_CASE("grammar examples") {
  PhaseSpace s1(1), s2(2);

  ExprPtr h = parse("p1^2/2 + x1^2/2", s1);
  REQUIRE(h->kind() == NodeKind::Sum);
  REQUIRE(h->children().size() == 2);
  for (const auto& term : h->children()) {
    CHECK(term->kind() == NodeKind::Quotient);
    CHECK(term->children()[0]->kind() == NodeKind::Power);
    CHECK(term->children()[0]->exponent() == 2);
    CHECK(term->children()[1]->kind() == NodeKind::Constant);
    CHECK(term->children()[1]->value() == 2);
  }

  ExprPtr l = parse("x1*p2 - x2*p1", s2);
  REQUIRE(l->kind() == NodeKind::Sum);
  REQUIRE(l->children().size() == 2);
  CHECK(l->children()[0]->kind() == NodeKind::Product);
  CHECK(l->children()[1]->kind() == NodeKind::Negate);
  CHECK(l->children()[1]->children()[0]->kind() == NodeKind::Product);

  CHECK(code_of([&] { parse("p1 +", s1); }) == Errc::UnexpectedEnd);
}

TEST_CASE("diagnostics carry byte offsets") {
  PhaseSpace s(1);
  try {
    parse("p1 $ 2", s);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnexpectedToken);
    CHECK(e.offset() == 3);
  }
  try {
    parse("p1 + q7", s);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownIdentifier);
    CHECK(e.offset() == 5);
  }
  CHECK(code_of([&] { parse("", s); }) == Errc::UnexpectedEnd);
  CHECK(code_of([&] { parse("(x1", s); }) == Errc::UnexpectedEnd);
  CHECK(code_of([&] { parse("x1 x1", s); }) == Errc::UnexpectedToken);
  CHECK(code_of([&] { parse("sin(x1, x1)", s); }) == Errc::UnexpectedToken);
}

TEST_CASE("arity and identifier resolution") {
  PhaseSpace s(1);
  CHECK(code_of([&] { parse("sin + 1", s); }) == Errc::ArityMismatch);
  CHECK(code_of([&] { parse("x1(2)", s); }) == Errc::ArityMismatch);
  CHECK(code_of([&] { parse("cos(y)", s); }) == Errc::UnknownIdentifier);
  CHECK(code_of([&] { parse("foo(2)", s); }) == Errc::UnknownIdentifier);
  CHECK(parse("sqrt(x1)", s)->kind() == NodeKind::Function);
  // jet variables are declared names
  CHECK(parse("xdot1 + pdot1", s)->kind() == NodeKind::Sum);
}

TEST_CASE("integer-constant exponents") {
  PhaseSpace s(1);
  CHECK(same_text(s, N(s, "2^3^2"), "512")); // right associative
  CHECK(parse("x1^-2", s)->exponent() == -2);
  CHECK(same_text(s, N(s, "x1^(4/2)"), "x1^2"));
  CHECK(code_of([&] { parse("x1^p1", s); }) == Errc::UnexpectedToken);
  CHECK(code_of([&] { parse("x1^0.5", s); }) == Errc::UnexpectedToken);
  CHECK(code_of([&] { parse("x1^(1/2)", s); }) == Errc::UnexpectedToken);
}

TEST_CASE("numeric literals are exact rationals") {
  PhaseSpace s(1);
  CHECK(same(N(s, "0.5"), N(s, "1/2")));
  CHECK(same(N(s, "1.5e2"), N(s, "150")));
  CHECK(same(N(s, "2e-2"), N(s, "1/50")));
  CHECK(same(N(s, "0.1"), N(s, "1/10")));
  CHECK_FALSE(same(N(s, "0.1"), Expr::constant(Rational(0x199999999999999aLL, 1LL << 60))));
}

TEST_CASE("render examples") {
  PhaseSpace s(1);
  CHECK(render(parse("p1^2", s)) == "p1^2");
  CHECK(render(parse("-(x1 + p1)", s)) == "-(x1 + p1)");
  CHECK(render(normalize(parse("x1 - x1", s))) == "0");
  CHECK(render(normalize(parse("p1^2/2 + x1^2/2", s))) == "x1^2/2 + p1^2/2");
  CHECK(render(normalize(parse("-2*x1*p1 + 1", s))) == "-2*x1*p1 + 1");
}

TEST_CASE("whitespace is insignificant") {
  PhaseSpace s(1);
  CHECK(structurally_equal(parse(" p1+x1 ", s), parse("p1 + x1", s)));
  CHECK(structurally_equal(parse("sin( x1 )", s), parse("sin(x1)", s)));
}

namespace {

// Random tree in the parser's image: products never have a product as their
// first factor (the parser flattens those), constants are non-negative.
ExprPtr random_parse_tree(const PhaseSpace& space, Rng& rng, int depth) {
  if (depth <= 0) {
    switch (rng.below(3)) {
      case 0: return Expr::integer(rng.int_in(0, 9));
      case 1: return space.var(rng.below(space.var_count()));
      default: return Expr::constant(Rational(rng.int_in(0, 20), 4)); // exact decimal
    }
  }
  switch (rng.below(7)) {
    case 0: {
      std::vector<ExprPtr> kids;
      int k = 2 + rng.below(2);
      for (int i = 0; i < k; ++i) {
        ExprPtr t = random_parse_tree(space, rng, depth - 1);
        kids.push_back(i > 0 && rng.below(2) ? Expr::negate(t) : t);
      }
      return Expr::sum(std::move(kids));
    }
    case 1: {
      std::vector<ExprPtr> kids;
      int k = 2 + rng.below(2);
      for (int i = 0; i < k; ++i) {
        ExprPtr f = random_parse_tree(space, rng, depth - 1);
        if (i == 0)
          while (f->kind() == NodeKind::Product) f = f->children()[0];
        kids.push_back(f);
      }
      return Expr::product(std::move(kids));
    }
    case 2:
      return Expr::quotient(random_parse_tree(space, rng, depth - 1),
                            random_parse_tree(space, rng, depth - 1));
    case 3:
      return Expr::negate(random_parse_tree(space, rng, depth - 1));
    case 4:
      return Expr::power(random_parse_tree(space, rng, 0), rng.int_in(-3, 4));
    case 5:
      return Expr::function(static_cast<FuncKind>(rng.below(5)),
                            random_parse_tree(space, rng, depth - 1));
    default:
      return random_parse_tree(space, rng, 0);
  }
}

} // namespace

TEST_CASE("parse inverts render on the parse image") {
  PhaseSpace s(2);
  Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    ExprPtr t = random_parse_tree(s, rng, 3);
    ExprPtr back = parse(render(t), s);
    CHECK(structurally_equal(t, back));
  }
}

TEST_CASE("round trip through the normal form") {
  PhaseSpace s(2);
  Rng rng(11);
  auto ids = xp_vars(s, true);
  for (int k = 0; k < 200; ++k) {
    ExprPtr e = random_poly(s, ids, 4, 5, rng);
    ExprPtr n = normalize(e);
    // parse(render(e)) is structurally the normalized tree, for normalized e
    CHECK(structurally_equal(parse(render(n), s), n));
    // and idempotence: parse . render . parse == parse
    ExprPtr p = parse(render(e), s);
    CHECK(structurally_equal(parse(render(p), s), p));
  }
}
