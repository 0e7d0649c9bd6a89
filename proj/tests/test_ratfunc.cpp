#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/expr.hpp"
#include "core/ratfunc.hpp"

using namespace qrtkit;

TEST_CASE("rational function reduction and arithmetic") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  MPoly U = MPoly::var(u), V = MPoly::var(v);

  RatFunc f((U + V) * (U - V), (U + V) * U);
  CHECK(f.num() == U - V);
  CHECK(f.den() == U);

  // denominator normalization: integer primitive, positive leading coefficient
  RatFunc g(U, (U + MPoly(1)) * Rat(-2, 3));
  CHECK(g.den() == U + MPoly(1));
  CHECK(g.num() == U * Rat(-3, 2));

  RatFunc x = RatFunc::var(u), y = RatFunc::var(v);
  CHECK(x + y == RatFunc(U + V));
  CHECK(x / y * y == x);
  CHECK((x / y).inverse() == y / x);
  CHECK(x.pow(-2) == RatFunc(MPoly(Rat(1)), U * U));
  CHECK((x - x).is_zero());
  CHECK_THROWS_AS(x / RatFunc(), Error);

  RatFunc h = (x * x - RatFunc(Rat(1))) / (x + RatFunc(Rat(1)));
  CHECK(h == x - RatFunc(Rat(1)));
}

TEST_CASE("rational function substitution and eval") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  RatFunc x = RatFunc::var(u), y = RatFunc::var(v);
  RatFunc one{Rat(1)};

  RatFunc f = (x + one) / x;
  // u -> 1/v
  RatFunc sub = f.substitute_all({{u, one / y}});
  CHECK(sub == (y + one));

  auto val = f.try_eval({{u, Rat(2)}});
  REQUIRE(val.has_value());
  CHECK(*val == Rat(3, 2));
  CHECK_FALSE(f.try_eval({{u, Rat(0)}}).has_value());

  // simultaneous swap
  RatFunc g = x / y;
  CHECK(g.substitute_all({{u, y}, {v, x}}) == y / x);

  CHECK(f.derivative(u) == -one / (x * x));
}

TEST_CASE("expression parsing") {
  CHECK(parse_expr("3/4") == RatFunc(Rat(3, 4)));
  CHECK(parse_expr("-2") == RatFunc(Rat(-2)));

  Sym u = sym_intern("u"), v = sym_intern("v");
  RatFunc x = RatFunc::var(u), y = RatFunc::var(v);
  RatFunc one{Rat(1)};

  CHECK(parse_expr("u + v") == x + y);
  CHECK(parse_expr("u*v - 1") == x * y - one);
  CHECK(parse_expr("(u+v)^2") == (x + y).pow(2));
  CHECK(parse_expr("u^-2") == x.pow(-2));
  CHECK(parse_expr("u^(-2)") == x.pow(-2));
  CHECK(parse_expr("-u^2") == -(x.pow(2)));
  CHECK(parse_expr("1/2*u") == x * RatFunc(Rat(1, 2)));
  CHECK(parse_expr("u/v/2") == x / y / RatFunc(Rat(2)));
  CHECK(parse_expr("2 - - 3") == RatFunc(Rat(5)));
  CHECK(parse_expr("(u^2+u*v)/(u)") == x + y);

  CHECK_THROWS_AS(parse_expr("u +"), Error);
  CHECK_THROWS_AS(parse_expr("(u"), Error);
  CHECK_THROWS_AS(parse_expr("u v"), Error);
  CHECK_THROWS_AS(parse_expr("1/0"), Error);
  CHECK_THROWS_AS(parse_expr("u^v"), Error);

  std::set<std::string> allowed{"u"};
  CHECK(parse_expr("u^2", &allowed) == x.pow(2));
  CHECK_THROWS_AS(parse_expr("u + zz", &allowed), Error);
}

TEST_CASE("indexed identifiers") {
  RatFunc a0 = parse_expr("a[n]");
  RatFunc a2 = parse_expr("a[n+2]");
  RatFunc am1 = parse_expr("a[n-1]");
  CHECK(a0 == RatFunc::var(sym_intern("a[n]")));
  CHECK(a2 == RatFunc::var(sym_intern("a[n+2]")));
  CHECK(am1 == RatFunc::var(sym_intern("a[n-1]")));
  CHECK(parse_expr("a[ n + 2 ]") == a2);

  std::string fam;
  long off = 0;
  CHECK(split_indexed_name("a[n+2]", fam, off));
  CHECK(fam == "a");
  CHECK(off == 2);
  CHECK(split_indexed_name("t[n-3]", fam, off));
  CHECK(off == -3);
  CHECK(split_indexed_name("a[n]", fam, off));
  CHECK(off == 0);
  CHECK_FALSE(split_indexed_name("a", fam, off));
  CHECK(indexed_name("a", -1) == "a[n-1]");
  CHECK(indexed_name("a", 0) == "a[n]");
  CHECK(indexed_name("a", 3) == "a[n+3]");

  CHECK_THROWS_AS(parse_expr("a[m]"), Error);
  CHECK_THROWS_AS(parse_expr("a[n+]"), Error);
  CHECK_THROWS_AS(parse_expr("a[n"), Error);
}

TEST_CASE("printing round trips") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  RatFunc x = RatFunc::var(u), y = RatFunc::var(v);
  RatFunc cases[] = {
      (x * y - RatFunc(Rat(1))) / (x + y),
      x.pow(3) * RatFunc(Rat(-2, 7)) + y,
      RatFunc(Rat(0)),
      RatFunc(Rat(-5, 3)),
      (x + y).pow(2) / x.pow(2),
  };
  for (const RatFunc& f : cases) CHECK(parse_expr(f.str()) == f);
}
