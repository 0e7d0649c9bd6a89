#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/expr.hpp"
#include "core/mapspec.hpp"
#include "core/param_model.hpp"
#include "core/pencil.hpp"

using namespace qrtkit;

namespace {

RatFunc RF(const std::string& s) { return parse_expr(s); }

bool has_curve_factor(const CurveFactorization& cf, const std::string& poly, int mult) {
  MPoly n = mpoly_normalize(parse_poly(poly));
  for (const auto& f : cf.factors)
    if (f.poly == n && f.mult == mult) return true;
  return false;
}

bool has_var_factor(const std::vector<VarFactor>& fs, const std::string& poly, int mult) {
  MPoly n = mpoly_normalize(parse_poly(poly));
  for (const auto& f : fs)
    if (f.poly == n && f.mult == mult) return true;
  return false;
}

bool has_root(const VarRoots& rs, const RatFunc& value, int mult) {
  for (const auto& r : rs.roots)
    if (r.value == value && r.mult == mult) return true;
  return false;
}

}  // namespace

TEST_CASE("invariant construction and symmetry detection") {
  Sym u = sym_intern("u"), v = sym_intern("v");

  QRTInvariant inv = make_invariant(RF("(u*v+A)*(u+v-1)/(u*v)"), u, v);
  CHECK(inv.symmetric);
  CHECK(inv.num.degree_in(u) == 2);
  CHECK(inv.num.degree_in(v) == 2);
  CHECK(inv.den == parse_poly("u*v"));

  Sym X = sym_intern("X"), Y = sym_intern("Y");
  QRTInvariant pair = make_invariant(RF("(X*Y^2+A*X^2+B*X+A*Y)/(X*Y)"), X, Y);
  CHECK(!pair.symmetric);

  CHECK_THROWS_WITH_AS(make_invariant(RF("u+v"), u, u), "invariant needs two distinct variables",
                       Error);
  CHECK_THROWS_WITH_AS(make_invariant(RatFunc(), u, v), "invariant is identically zero", Error);
  CHECK_THROWS_WITH_AS(make_invariant(RF("u^3+v"), u, v), "invariant is not biquadratic", Error);
  CHECK_THROWS_WITH_AS(make_invariant(RF("(A+1)/(A-1)"), u, v),
                       "invariant does not involve the state variables", Error);
}

TEST_CASE("pencil comparison under a moebius change of the level coordinate") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  QRTInvariant a = make_invariant(RF("(u*v+A)*(u+v-1)/(u*v)"), u, v);

  // K' = (2K+1)/(K+3) spans the same family of level curves
  RatFunc n(a.num), d(a.den);
  QRTInvariant b = make_invariant((RatFunc(Rat(2)) * n + d) / (n + RatFunc(Rat(3)) * d), u, v);
  CHECK(same_pencil(a, b));
  CHECK(same_pencil(b, a));

  QRTInvariant c = make_invariant(RF("(u*v+A*(u+v)-A)*(u+v+A)/(u*v)"), u, v);
  CHECK(!same_pencil(a, c));
}

TEST_CASE("map extracted from a symmetric invariant") {
  Sym u = sym_intern("u"), v = sym_intern("v");

  // multiplicative pencil with denominator uv
  QRTInvariant inv = make_invariant(RF("(u*v+A)*(u+v-1)/(u*v)"), u, v);
  MapSpec m = map_from_invariant(inv);
  CHECK(m.kind == MapKind::ThreePoint);
  CHECK(m.update == RF("A*(v-1)/(u*v)"));
  CHECK(m.back_update == m.update);  // the root switch is an involution
  CHECK(check_invariant(m, inv));

  QRTInvariant other = make_invariant(RF("(u*v+A*(u+v)-A)*(u+v+A)/(u*v)"), u, v);
  MapSpec m2 = map_from_invariant(other);
  CHECK(m2.update == RF("A*(v-1)/u"));
  CHECK(check_invariant(m2, other));

  // conserving one pencil does not conserve a perturbed one
  QRTInvariant perturbed = make_invariant(RF("(u*v+A)*(u+v-2)/(u*v)"), u, v);
  CHECK(!check_invariant(m, perturbed));

  // a pencil with no quadratic term along the fibre direction has no
  // second root to switch to
  QRTInvariant lin = make_invariant(RF("u+v"), u, v);
  CHECK_THROWS_WITH_AS(map_from_invariant(lin), "degenerate pencil", Error);
}

TEST_CASE("map extracted from an asymmetric invariant") {
  Sym X = sym_intern("X"), Y = sym_intern("Y");
  QRTInvariant inv = make_invariant(RF("(X*Y^2+A*X^2+B*X+A*Y)/(X*Y)"), X, Y);
  CHECK(!inv.symmetric);

  MapSpec m = map_from_invariant(inv);
  CHECK(m.kind == MapKind::AsymmetricPair);
  CHECK(m.h_update == RF("Y/X"));
  CHECK(m.v_update == RF("(A*X+B)/Y"));
  CHECK(check_invariant(m, inv));
  CHECK(check_invariant(inverse_map(m), inv));
}

TEST_CASE("forward and inverse steps cancel") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  Sym p = sym_intern("p"), q = sym_intern("q");
  SymState seed{RatFunc::var(p), RatFunc::var(q), 5};

  QRTInvariant inv = make_invariant(RF("(u*v+A)*(u+v-1)/(u*v)"), u, v);
  MapSpec m = map_from_invariant(inv);

  SymState fwd = step_symbolic(m, seed);
  CHECK(fwd.a == seed.b);
  CHECK(fwd.tau == 6);
  SymState rt = step_symbolic(m, fwd, true);
  CHECK(rt.a == seed.a);
  CHECK(rt.b == seed.b);
  CHECK(rt.tau == 5);

  // the inverse map runs the same relation downwards
  MapSpec mi = inverse_map(m);
  SymState rt2 = step_symbolic(mi, fwd);
  CHECK(rt2.a == seed.a);
  CHECK(rt2.b == seed.b);
  SymState bwd = step_symbolic(mi, seed, true);
  SymState fwd2 = step_symbolic(mi, bwd);
  CHECK(fwd2.a == seed.a);
  CHECK(fwd2.b == seed.b);

  // non-involutive three point rule
  MapSpec add = three_point_map(RF("u+v"), u, v);
  CHECK(add.back_update == RF("u-v"));
  SymState f1 = step_symbolic(add, seed);
  SymState r1 = step_symbolic(add, f1, true);
  CHECK(r1.a == seed.a);
  CHECK(r1.b == seed.b);

  // asymmetric pair, both relation halves
  Sym X = sym_intern("X"), Y = sym_intern("Y");
  QRTInvariant ainv = make_invariant(RF("(X*Y^2+A*X^2+B*X+A*Y)/(X*Y)"), X, Y);
  MapSpec am = map_from_invariant(ainv);
  SymState af = step_symbolic(am, seed);
  CHECK(af.a == RF("q/p"));
  CHECK(af.b == RF("(A*q+B*p)/(p*q)"));
  SymState ar = step_symbolic(am, af, true);
  CHECK(ar.a == seed.a);
  CHECK(ar.b == seed.b);

  // non-involutive halves
  MapSpec lm = asymmetric_map(RF("2*X"), RF("2*Y"), X, Y);
  CHECK(lm.h_back == RF("X/2"));
  CHECK(lm.v_back == RF("Y/2"));
  SymState lf = step_symbolic(lm, seed);
  CHECK(lf.a == RF("2*p"));
  CHECK(lf.b == RF("2*q"));
  SymState lr = step_symbolic(lm, lf, true);
  CHECK(lr.a == seed.a);
  CHECK(lr.b == seed.b);

  CHECK_THROWS_WITH_AS(three_point_map(RF("v/u^2"), u, v), "update rule is not birational", Error);
}

TEST_CASE("steps bind coefficient sequences") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  Sym x = sym_intern("x"), y = sym_intern("y");
  SymState seed{RatFunc::var(x), RatFunc::var(y), 0};

  SUBCASE("secular") {
    ParamModel pm;
    pm.seqs["a"] = SeqSpec::secular();
    MapSpec m = three_point_map(RF("a[n]*v/u"), u, v, pm);
    SymState s1 = step_symbolic(m, seed);
    CHECK(s1.b == RF("tau*y/x"));
    SymState s2 = step_symbolic(m, s1);
    CHECK(s2.b == RF("(tau+alpha)*tau/x"));
    SymState b1 = step_symbolic(m, seed, true);
    CHECK(b1.tau == -1);
    CHECK(b1.a == RF("(tau-alpha)*x/y"));
    CHECK(b1.b == seed.a);
    // down and up with the same rule cancel even with moving coefficients
    SymState rt = step_symbolic(m, b1);
    CHECK(rt.a == seed.a);
    CHECK(rt.b == seed.b);
  }

  SUBCASE("periodic") {
    ParamModel pm;
    pm.seqs["a"] = SeqSpec::periodic({RatFunc(Rat(2)), RatFunc(Rat(3))});
    MapSpec m = three_point_map(RF("a[n]*v/u"), u, v, pm);
    SymState s1 = step_symbolic(m, seed);
    CHECK(s1.b == RF("2*y/x"));
    SymState s2 = step_symbolic(m, s1);
    CHECK(s2.b == RF("6/x"));
    SymState b1 = step_symbolic(m, seed, true);
    CHECK(b1.a == RF("3*x/y"));
  }

  SUBCASE("formal") {
    ParamModel pm;
    pm.seqs["a"] = SeqSpec::formal("a");
    MapSpec m = three_point_map(RF("a[n]*v/u"), u, v, pm);
    SymState s1 = step_symbolic(m, seed);
    CHECK(s1.b == RF("a[n]*y/x"));
    SymState s2 = step_symbolic(m, s1);
    CHECK(s2.b == RF("a[n+1]*a[n]/x"));
  }

  SUBCASE("table") {
    ParamModel pm;
    pm.seqs["a"] = SeqSpec::explicit_table({{0, RatFunc(Rat(5))}});
    MapSpec m = three_point_map(RF("a[n]*v/u"), u, v, pm);
    SymState s1 = step_symbolic(m, seed);
    CHECK(s1.b == RF("5*y/x"));
    CHECK_THROWS_WITH_AS(step_symbolic(m, s1), "coefficient sequence has no value at index 1",
                         Error);
  }

  SUBCASE("unbound family") {
    MapSpec m = three_point_map(RF("a[n]*v/u"), u, v);
    CHECK_THROWS_WITH_AS(step_symbolic(m, seed), "no sequence spec for coefficient family a",
                         Error);
  }
}

TEST_CASE("double step invariant") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  QRTInvariant inv = make_invariant(RF("(u*v+A)*(u+v-1)/(u*v)"), u, v);
  MapSpec m = map_from_invariant(inv);

  QRTInvariant same = multi_step_invariant(m, inv, 1);
  CHECK(same.num == inv.num);
  CHECK(same.den == inv.den);

  QRTInvariant inv2 = multi_step_invariant(m, inv, 2);
  CHECK(RatFunc(inv2.num, inv2.den) == RF("-(u*v-u-A)*(u*v-v-A)/(u*v-A)"));
  CHECK(inv2.symmetric);

  // conserved along the even sublattice: K2(x0,x2) = K2(x2,x4)
  Sym p = sym_intern("p"), q = sym_intern("q");
  SymState s0{RatFunc::var(p), RatFunc::var(q), 0};
  SymState s1 = step_symbolic(m, s0);
  SymState s2 = step_symbolic(m, s1);
  SymState s3 = step_symbolic(m, s2);
  RatFunc K2(inv2.num, inv2.den);
  std::map<Sym, RatFunc> lo, hi;
  lo[u] = s0.a;
  lo[v] = s1.b;  // (x0, x2)
  hi[u] = s1.b;
  hi[v] = s3.b;  // (x2, x4)
  CHECK(K2.substitute_all(lo) == K2.substitute_all(hi));

  CHECK_THROWS_WITH_AS(multi_step_invariant(m, inv, 4), "step count must be 1, 2, or 3", Error);

  Sym X = sym_intern("X"), Y = sym_intern("Y");
  QRTInvariant ainv = make_invariant(RF("(X*Y^2+A*X^2+B*X+A*Y)/(X*Y)"), X, Y);
  MapSpec am = map_from_invariant(ainv);
  CHECK_THROWS_WITH_AS(multi_step_invariant(am, ainv, 2),
                       "multi-step form needs a three-point map", Error);

  // x' = x x''/x renders the one step invariant u/v independent of v after
  // the middle point is eliminated
  QRTInvariant ratio = make_invariant(RF("u/v"), u, v);
  MapSpec rm = three_point_map(RF("v/u"), u, v);
  CHECK_THROWS_WITH_AS(multi_step_invariant(rm, ratio, 2), "invariant collapses", Error);
}

TEST_CASE("triple step invariant") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  QRTInvariant inv = make_invariant(RF("(u*v+A*(u+v)-A)*(u+v+A)/(u*v)"), u, v);
  MapSpec m = map_from_invariant(inv);

  QRTInvariant inv3 = multi_step_invariant(m, inv, 3);
  CHECK(inv3.symmetric);

  // absorbing one factor of the multiplier into each variable brings the
  // denominator to the canonical product form
  std::map<Sym, RatFunc> absorb;
  absorb[u] = RF("A*u");
  absorb[v] = RF("A*v");
  RatFunc K3 = RatFunc(inv3.num, inv3.den).substitute_all(absorb);
  CHECK(K3 == RF("-(A*u*v-A-1)*(A*u*v-u-v-A-2)/(u*v-1)"));

  // conserved along the triple sublattice: K3(x0,x3) = K3(x3,x6)
  Sym p = sym_intern("p"), q = sym_intern("q");
  RatFunc K3raw(inv3.num, inv3.den);
  SymState t{RatFunc::var(p), RatFunc::var(q), 0};
  std::vector<RatFunc> orbit{t.a, t.b};
  for (int i = 0; i < 5; ++i) {
    t = step_symbolic(m, t);
    orbit.push_back(t.b);
  }
  std::map<Sym, RatFunc> lo{{u, orbit[0]}, {v, orbit[3]}};
  std::map<Sym, RatFunc> hi{{u, orbit[3]}, {v, orbit[6]}};
  CHECK(K3raw.substitute_all(lo) == K3raw.substitute_all(hi));
}

TEST_CASE("middle point elimination") {
  Sym X = sym_intern("X"), Y = sym_intern("Y");
  QRTInvariant inv = make_invariant(RF("(X*Y^2+A*X^2+B*X+A*Y)/(X*Y)"), X, Y);
  MapSpec m = map_from_invariant(inv);

  SUBCASE("keep the horizontal variable") {
    MapSpec ex = eliminate(m, KeepVar::X);
    CHECK(ex.kind == MapKind::ThreePoint);
    CHECK(ex.v == X);
    CHECK(ex.u == sym_intern("X#prev"));
    RatFunc pu = RatFunc::var(ex.u), cu = RatFunc::var(ex.v);
    RatFunc A = RF("A"), B = RF("B");
    CHECK(ex.update == (A * cu + B) / (pu * cu * cu));

    // one collapsed step tracks two steps of the pair through X
    Sym p = sym_intern("p"), q = sym_intern("q");
    SymState pair0{RatFunc::var(p), RatFunc::var(q), 0};
    SymState pair1 = step_symbolic(m, pair0);
    SymState pair2 = step_symbolic(m, pair1);
    SymState coll{pair0.a, pair1.a, 0};  // (X0, X1)
    SymState next = step_symbolic(ex, coll);
    CHECK(next.b == pair2.a);
  }

  SUBCASE("keep the vertical variable") {
    MapSpec ey = eliminate(m, KeepVar::Y);
    CHECK(ey.v == Y);
    CHECK(ey.u == sym_intern("Y#prev"));
    RatFunc pu = RatFunc::var(ey.u), cu = RatFunc::var(ey.v);
    RatFunc A = RF("A"), B = RF("B");
    CHECK(ey.update == (B * (pu * cu - B) + A * A * cu) / (cu * (pu * cu - B)));

    SymState pair0{RF("p"), RF("q"), 0};
    SymState pair1 = step_symbolic(m, pair0);
    SymState pair2 = step_symbolic(m, pair1);
    SymState coll{pair0.b, pair1.b, 0};  // (Y0, Y1)
    SymState next = step_symbolic(ey, coll);
    CHECK(next.b == pair2.b);
  }

  SUBCASE("decoupled components") {
    MapSpec dec = asymmetric_map(RatFunc::var(X), RF("2*Y"), X, Y);
    MapSpec keep_x = eliminate(dec, KeepVar::X);
    CHECK(keep_x.update == RatFunc::var(X));
    CHECK(keep_x.v == X);
    MapSpec keep_y = eliminate(dec, KeepVar::Y);
    CHECK(keep_y.update == RF("2*Y"));
  }

  SUBCASE("moving coefficients shift down one index") {
    ParamModel pm;
    pm.seqs["a"] = SeqSpec::formal("a");
    MapSpec nm = asymmetric_map(RF("Y/X"), RF("(a[n]*X+1)/Y"), X, Y, pm);
    MapSpec ex = eliminate(nm, KeepVar::X);
    RatFunc pu = RatFunc::var(ex.u), cu = RatFunc::var(ex.v);
    CHECK(ex.update == (RF("a[n-1]") * cu + RatFunc(Rat(1))) / (pu * cu * cu));
  }

  SUBCASE("failure modes") {
    MapSpec sq = asymmetric_map(RF("Y^2/X"), RF("X/Y"), X, Y);
    CHECK_THROWS_WITH_AS(eliminate(sq, KeepVar::X), "cannot eliminate", Error);

    Sym u = sym_intern("u"), v = sym_intern("v");
    MapSpec tp = three_point_map(RF("u+v"), u, v);
    CHECK_THROWS_WITH_AS(eliminate(tp, KeepVar::X), "map is not an asymmetric pair", Error);

    CHECK_THROWS_WITH_AS(three_point_map(RF("u+1"), u, u),
                         "map needs two distinct state variables", Error);
    CHECK_THROWS_WITH_AS(three_point_map(RF("A+1"), u, v),
                         "update rule does not involve the state", Error);
  }
}

TEST_CASE("solving a moebius relation") {
  Sym x = sym_intern("x"), r = sym_intern("r");
  std::optional<RatFunc> s = mobius_solve(RF("(2*x+3)/(x-1)"), x, RatFunc::var(r));
  REQUIRE(s);
  CHECK(*s == RF("(r+3)/(r-2)"));

  CHECK(!mobius_solve(RF("x^2"), x, RatFunc::var(r)));
  CHECK(!mobius_solve(RF("r+1"), x, RatFunc::var(r)));
  // coefficient of the unknown cancels against the target value
  CHECK(!mobius_solve(RF("(2*x+1)/x"), x, RF("2")));
}

TEST_CASE("curve factorization over the parameter field") {
  Sym u = sym_intern("u"), v = sym_intern("v");

  CurveFactorization cf = factor_uv_poly(parse_poly("(u*v+A)*(u+v-1)"), u, v);
  CHECK(cf.content == MPoly(Rat(1)));
  CHECK(cf.factors.size() == 2);
  CHECK(has_curve_factor(cf, "u*v+A", 1));
  CHECK(has_curve_factor(cf, "u+v-1", 1));

  CurveFactorization sq = factor_uv_poly(parse_poly("6*A*u^2*(u*v-1)^2"), u, v);
  CHECK(sq.content == parse_poly("6*A"));
  CHECK(has_curve_factor(sq, "u", 2));
  CHECK(has_curve_factor(sq, "u*v-1", 2));

  CurveFactorization sp = factor_uv_poly(parse_poly("u^2*v^2-5*u*v+4"), u, v);
  CHECK(sp.factors.size() == 2);
  CHECK(has_curve_factor(sp, "u*v-1", 1));
  CHECK(has_curve_factor(sp, "u*v-4", 1));

  CurveFactorization irr = factor_uv_poly(parse_poly("u^2+v^2+1"), u, v);
  CHECK(irr.factors.size() == 1);
  CHECK(irr.factors[0].mult == 1);
  CHECK(irr.factors[0].poly == parse_poly("u^2+v^2+1"));

  CHECK_THROWS_WITH_AS(factor_uv_poly(parse_poly("v^3+u"), u, v),
                       "curve factorization beyond supported scope", Error);
}

TEST_CASE("single variable factors and roots over parameters") {
  Sym x = sym_intern("x");

  auto fs = factor_in_var(parse_poly("(x-s)*(x-2)^2"), x);
  CHECK(fs.size() == 2);
  CHECK(has_var_factor(fs, "x-s", 1));
  CHECK(has_var_factor(fs, "x-2", 2));

  VarRoots rs = roots_in_var(parse_poly("(x-s)*(x-2)^2"), x);
  CHECK(rs.complete);
  CHECK(has_root(rs, RF("s"), 1));
  CHECK(has_root(rs, RF("2"), 2));

  // square discriminant splits over the field
  VarRoots sq = roots_in_var(parse_poly("x^2-s^2"), x);
  CHECK(sq.complete);
  CHECK(has_root(sq, RF("s"), 1));
  CHECK(has_root(sq, RF("-s"), 1));

  // no rational function roots; the factor stays whole and is flagged
  VarRoots ir = roots_in_var(parse_poly("x^2-s"), x);
  CHECK(ir.roots.empty());
  CHECK(!ir.complete);

  // two parameters, constant root plus a leftover linear factor
  VarRoots two = roots_in_var(parse_poly("(x-s*t)*(x-1)"), x);
  CHECK(two.complete);
  CHECK(has_root(two, RF("s*t"), 1));
  CHECK(has_root(two, RF("1"), 1));

  // two parameters, split through the square discriminant
  VarRoots twosq = roots_in_var(parse_poly("x^2-s^2*t^2"), x);
  CHECK(twosq.complete);
  CHECK(has_root(twosq, RF("s*t"), 1));
  CHECK(has_root(twosq, RF("-s*t"), 1));

  bool complete = true;
  auto deep = factor_in_var(parse_poly("(x^2-s)^3*(x-s)"), x, &complete);
  CHECK(complete);
  CHECK(has_var_factor(deep, "x^2-s", 3));
  CHECK(has_var_factor(deep, "x-s", 1));
}

TEST_CASE("indexed coefficient utilities") {
  RatFunc f = RF("a[n]*x + b[n-1]/a[n+2]");
  CHECK(shift_indexed(f, 2) == RF("a[n+2]*x + b[n+1]/a[n+4]"));
  CHECK(shift_indexed(f, 0) == f);
  CHECK(shift_indexed(shift_indexed(f, 3), -3) == f);

  std::vector<Sym> syms = indexed_symbols(f);
  CHECK(syms.size() == 3);
  CHECK(std::find(syms.begin(), syms.end(), sym_intern("a[n]")) != syms.end());
  CHECK(std::find(syms.begin(), syms.end(), sym_intern("a[n+2]")) != syms.end());
  CHECK(std::find(syms.begin(), syms.end(), sym_intern("b[n-1]")) != syms.end());
}

TEST_CASE("generic orbits never lose seed dependence") {
  Sym u = sym_intern("u"), v = sym_intern("v");
  Sym p = sym_intern("p"), q = sym_intern("q");
  MapSpec m = three_point_map(RF("3*(v-1)/(u*v)"), u, v);
  SymState s{RatFunc::var(p), RatFunc::var(q), 0};
  for (int i = 0; i < 10; ++i) {
    s = step_symbolic(m, s);
    CHECK(s.b.depends_on(p));
    CHECK(s.b.depends_on(q));
  }
}
