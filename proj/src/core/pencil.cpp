#include "core/pencil.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "core/error.hpp"
#include "core/factor.hpp"

namespace qrtkit {

namespace {

// gcd of all coefficients of p read as a polynomial in u and v jointly; the
// result involves parameters only.
MPoly uv_content(const MPoly& p, Sym u, Sym v) {
  MPoly g;
  for (const MPoly& cu : p.coeffs_in(u)) {
    for (const MPoly& c : cu.coeffs_in(v)) {
      if (c.is_zero()) continue;
      g = g.is_zero() ? mpoly_normalize(c) : mpoly_gcd(g, c);
      if (g.is_constant()) return MPoly(Rat(1));
    }
  }
  return g.is_zero() ? MPoly(Rat(1)) : g;
}

void push_factor(std::vector<CurveFactor>& out, const MPoly& f, int mult) {
  MPoly n = mpoly_normalize(f);
  for (auto& cf : out)
    if (cf.poly == n) {
      cf.mult += mult;
      return;
    }
  out.push_back({n, mult});
}

// Remove x^k from every term; k = minimal exponent of x across p.
int strip_var_power(MPoly& p, Sym x) {
  int low = p.degree_in(x);
  for (const auto& [mono, c] : p.terms()) {
    (void)c;
    low = std::min<int>(low, mono.exp(x));
    if (low == 0) return 0;
  }
  MPoly shifted;
  for (const auto& [mono, c] : p.terms()) {
    Mono m = mono;
    for (auto& pe : m.e)
      if (pe.first == x) pe.second = static_cast<std::uint16_t>(pe.second - low);
    m.e.erase(std::remove_if(m.e.begin(), m.e.end(), [](const auto& pe) { return pe.second == 0; }),
              m.e.end());
    shifted.add_term(m, c);
  }
  p = shifted;
  return low;
}

// Factor a polynomial of degree <= 2 in v into irreducibles over the field of
// rational functions in every other symbol.
void split_v_quadratic(const MPoly& q, Sym u, Sym v, int mult, std::vector<CurveFactor>& out);

// Dispatch on the v-degree of a polynomial with no uv-content.
void split_primitive(const MPoly& q, Sym u, Sym v, int mult, std::vector<CurveFactor>& out) {
  int dv = q.degree_in(v);
  if (dv == 0) {
    bool complete = true;
    for (const auto& vf : factor_in_var(q, u, &complete)) push_factor(out, vf.poly, mult * vf.mult);
    if (!complete) fail_analysis("curve factorization beyond supported scope");
    return;
  }
  if (dv == 1) {
    // q = B(u) v + C(u); the common u-part of B and C splits off.
    MPoly B = q.coeff_of(v, 1), C = q.coeff_of(v, 0);
    MPoly g = C.is_zero() ? mpoly_normalize(B) : mpoly_gcd(B, C);
    if (!g.is_constant()) {
      split_primitive(g, u, v, mult, out);
      MPoly lin = mpoly_divexact(B, g) * MPoly::var(v);
      if (!C.is_zero()) lin += mpoly_divexact(C, g);
      push_factor(out, lin, mult);
    } else {
      push_factor(out, q, mult);
    }
    return;
  }
  if (dv == 2) {
    MPoly c = mpoly_content_in(v, q);
    if (!c.is_constant()) {
      split_primitive(c, u, v, mult, out);
      split_v_quadratic(mpoly_divexact(q, c), u, v, mult, out);
    } else {
      split_v_quadratic(q, u, v, mult, out);
    }
    return;
  }
  fail_analysis("curve factorization beyond supported scope");
}

void split_v_quadratic(const MPoly& q, Sym u, Sym v, int mult, std::vector<CurveFactor>& out) {
  MPoly A = q.coeff_of(v, 2), B = q.coeff_of(v, 1), C = q.coeff_of(v, 0);
  MPoly disc = B * B - MPoly(Rat(4)) * A * C;
  if (disc.is_zero()) {
    // q is a rational multiple of the square of the primitive part of 2Av+B
    MPoly h = B.is_zero() ? mpoly_normalize(A) : mpoly_gcd(A, B);
    MPoly lin = mpoly_divexact(A, h) * MPoly(Rat(2)) * MPoly::var(v);
    if (!B.is_zero()) lin += mpoly_divexact(B, h);
    lin = mpoly_normalize(lin);
    MPoly rest = q;
    for (int i = 0; i < 2; ++i) {
      MPoly next;
      if (!mpoly_try_divexact(rest, lin, next)) fail_analysis("curve factorization beyond supported scope");
      rest = next;
    }
    push_factor(out, lin, 2 * mult);
    if (!rest.is_constant()) split_primitive(mpoly_normalize(rest), u, v, mult, out);
    return;
  }
  std::optional<MPoly> S = mpoly_sqrt(disc);
  if (!S) {
    push_factor(out, q, mult);
    return;
  }
  // 4A q = (2A v + B - S)(2A v + B + S); each half reduces to its primitive
  // part, and those multiply back to q up to a rational.
  MPoly rest = q;
  for (int sign = -1; sign <= 1; sign += 2) {
    MPoly F = MPoly(Rat(2)) * A * MPoly::var(v) + B + (sign < 0 ? -*S : *S);
    MPoly cf = mpoly_content_in(v, F);
    MPoly Fp = cf.is_constant() ? F : mpoly_divexact(F, cf);
    MPoly next;
    if (mpoly_try_divexact(rest, Fp, next)) {
      push_factor(out, Fp, mult);
      rest = next;
    }
  }
  if (!rest.is_constant()) split_primitive(mpoly_normalize(rest), u, v, mult, out);
}

// ---- linear factor extraction over a one-parameter coefficient ring ----

// Divisors of c in Q[s] up to rational multiples, from a complete irreducible
// factorization; empty when c has too many divisors or resists factoring.
std::vector<MPoly> param_divisors(const MPoly& c, Sym s) {
  std::vector<MPoly> divs;
  UFactorization fz = factor_univariate(upoly_from_mpoly(c, s));
  if (!fz.complete) return divs;
  std::size_t count = 1;
  for (const auto& uf : fz.factors) {
    count *= static_cast<std::size_t>(uf.mult) + 1;
    if (count > 64) return divs;
  }
  divs.push_back(MPoly(Rat(1)));
  for (const auto& uf : fz.factors) {
    MPoly base = mpoly_from_upoly(uf.f, s);
    std::size_t prior = divs.size();
    MPoly powed = base;
    for (int k = 1; k <= uf.mult; ++k) {
      for (std::size_t i = 0; i < prior; ++i) divs.push_back(divs[i] * powed);
      powed *= base;
    }
  }
  return divs;
}

bool is_rf_root(const MPoly& f, Sym x, const RatFunc& r) {
  std::map<Sym, RatFunc> sub;
  sub[x] = r;
  return ratfunc_subst(f, sub).is_zero();
}

// Pull every root in Q(s) out of a squarefree f (monic content stripped);
// returns false when the search could not be run exhaustively.
bool extract_param_roots(MPoly& f, Sym s, Sym x, int mult, std::vector<VarFactor>& out) {
  bool exhaustive = true;
  bool progress = true;
  while (progress && f.degree_in(x) >= 1) {
    progress = false;
    MPoly c0 = f.coeff_of(x, 0);
    MPoly cd = f.coeff_of(x, f.degree_in(x));
    if (c0.is_zero()) {
      // squarefree, so x divides exactly once
      out.push_back({MPoly::var(x), mult});
      f = mpoly_divexact(f, MPoly::var(x));
      progress = true;
      continue;
    }
    std::vector<MPoly> P = param_divisors(c0, s), Q = param_divisors(cd, s);
    if (P.empty() || Q.empty()) return false;
    // rational point keeping the degree and the divisor values nonzero
    long s0 = 0;
    std::vector<Rat> roots0;
    bool found_pt = false;
    for (long cand : {1L, 2L, 3L, 5L, 7L, -1L, -2L, 4L, 11L, 13L, -3L, 17L}) {
      Rat v0 = c0.substitute(s, MPoly(Rat(cand))).constant_value();
      Rat vd = cd.substitute(s, MPoly(Rat(cand))).constant_value();
      if (v0 == 0 || vd == 0) continue;
      s0 = cand;
      found_pt = true;
      break;
    }
    if (!found_pt) return false;
    MPoly f0 = f.substitute(s, MPoly(Rat(s0)));
    roots0 = rational_roots(upoly_from_mpoly(f0, x));
    for (const Rat& rho : roots0) {
      bool extracted = false;
      for (const MPoly& p : P) {
        Rat pv = p.substitute(s, MPoly(Rat(s0))).constant_value();
        if (pv == 0) continue;
        for (const MPoly& q : Q) {
          Rat qv = q.substitute(s, MPoly(Rat(s0))).constant_value();
          if (qv == 0) continue;
          Rat lam = rho * qv / pv;
          if (lam == 0) continue;
          RatFunc r = RatFunc(p * lam) / RatFunc(q);
          if (!is_rf_root(f, x, r)) continue;
          MPoly lin = mpoly_normalize(q * MPoly::var(x) - p * lam);
          MPoly next;
          if (!mpoly_try_divexact(f, lin, next)) continue;
          out.push_back({lin, mult});
          f = next;
          progress = true;
          extracted = true;
          break;
        }
        if (extracted) break;
      }
      if (extracted) break;
    }
  }
  return exhaustive;
}

// Constant rational roots of f in x, coefficients in several parameters.
void extract_const_roots(MPoly& f, Sym x, int mult, std::vector<VarFactor>& out) {
  bool progress = true;
  while (progress && f.degree_in(x) >= 1) {
    progress = false;
    if (f.coeff_of(x, 0).is_zero()) {
      out.push_back({MPoly::var(x), mult});
      f = mpoly_divexact(f, MPoly::var(x));
      progress = true;
      continue;
    }
    // candidates come from a generic pinning of the parameters; every hit is
    // verified by exact substitution before division
    std::map<Sym, MPoly> pin;
    for (Sym s : f.symbols())
      if (s != x) pin[s] = MPoly(Rat(static_cast<long>(3 + 2 * pin.size())));
    MPoly f0 = f.substitute_all(pin);
    if (f0.degree_in(x) != f.degree_in(x)) return;
    for (const Rat& rho : rational_roots(upoly_from_mpoly(f0, x))) {
      if (!is_rf_root(f, x, RatFunc(Rat(rho)))) continue;
      MPoly lin = MPoly::var(x) - MPoly(rho);
      MPoly next;
      if (!mpoly_try_divexact(f, lin, next)) continue;
      out.push_back({lin, mult});
      f = next;
      progress = true;
      break;
    }
  }
}

// Split one squarefree piece (content-free, positive degree in x).
void emit_squarefree(MPoly sf, Sym x, int mult, std::vector<VarFactor>& out, bool& complete) {
  std::vector<Sym> params;
  for (Sym s : sf.symbols())
    if (s != x) params.push_back(s);

  if (params.empty()) {
    UFactorization fz = factor_univariate(upoly_from_mpoly(sf, x));
    if (!fz.complete) complete = false;
    for (const auto& uf : fz.factors) out.push_back({mpoly_from_upoly(uf.f, x), mult * uf.mult});
    return;
  }

  int d = sf.degree_in(x);
  if (d == 1) {
    out.push_back({mpoly_normalize(sf), mult});
    return;
  }

  bool exhaustive = false;
  if (params.size() == 1) {
    exhaustive = extract_param_roots(sf, params[0], x, mult, out);
  } else {
    extract_const_roots(sf, x, mult, out);
  }
  d = sf.degree_in(x);
  if (d == 0) return;
  if (d == 1) {
    out.push_back({mpoly_normalize(sf), mult});
    return;
  }
  if (d == 2) {
    MPoly A = sf.coeff_of(x, 2), B = sf.coeff_of(x, 1), C = sf.coeff_of(x, 0);
    MPoly disc = B * B - MPoly(Rat(4)) * A * C;
    std::optional<MPoly> S = mpoly_sqrt(disc);
    if (S) {
      for (int sign = -1; sign <= 1; sign += 2) {
        MPoly F = MPoly(Rat(2)) * A * MPoly::var(x) + B + (sign < 0 ? -*S : *S);
        MPoly cf = mpoly_content_in(x, F);
        out.push_back({mpoly_normalize(cf.is_constant() ? F : mpoly_divexact(F, cf)), mult});
      }
    } else {
      // squarefree, so the discriminant cannot vanish; a non-square
      // discriminant certifies irreducibility over the coefficient field
      out.push_back({mpoly_normalize(sf), mult});
    }
    return;
  }
  // degree 3 after an exhaustive root search has no linear factor left,
  // hence is irreducible; anything else is undecided
  if (!(d == 3 && exhaustive)) complete = false;
  out.push_back({mpoly_normalize(sf), mult});
}

}  // namespace

QRTInvariant make_invariant(const RatFunc& K, Sym u, Sym v) {
  if (u == v) fail_invalid("invariant needs two distinct variables");
  QRTInvariant inv;
  inv.num = K.num();
  inv.den = K.den();
  inv.u = u;
  inv.v = v;
  if (inv.num.is_zero()) fail_invalid("invariant is identically zero");
  for (const MPoly* p : {&inv.num, &inv.den}) {
    if (p->degree_in(u) > 2 || p->degree_in(v) > 2) fail_invalid("invariant is not biquadratic");
  }
  if (!inv.num.depends_on(u) && !inv.num.depends_on(v) && !inv.den.depends_on(u) &&
      !inv.den.depends_on(v))
    fail_invalid("invariant does not involve the state variables");
  Sym tmp = sym_intern("#swap");
  auto swap_uv = [&](const MPoly& p) {
    return p.substitute(u, MPoly::var(tmp)).substitute(v, MPoly::var(u)).substitute(tmp, MPoly::var(v));
  };
  inv.symmetric = (swap_uv(inv.num) * inv.den == swap_uv(inv.den) * inv.num);
  return inv;
}

MPoly pencil_member(const QRTInvariant& inv, const RatFunc& K) {
  MPoly m = inv.num * K.den() - K.num() * inv.den;
  if (m.is_zero()) fail_invalid("requested pencil member is identically zero");
  return mpoly_normalize(m);
}

MPoly pencil_member_inf(const QRTInvariant& inv) { return mpoly_normalize(inv.den); }

CurveFactorization factor_uv_poly(const MPoly& p, Sym u, Sym v) {
  if (p.is_zero()) fail_invalid("cannot factor the zero curve");
  CurveFactorization res;
  res.content = uv_content(p, u, v);
  MPoly q = res.content.is_constant() && res.content.constant_value() == 1
                ? p
                : mpoly_divexact(p, res.content);

  for (Sym x : {u, v}) {
    int low = strip_var_power(q, x);
    if (low > 0) push_factor(res.factors, MPoly::var(x), low);
  }

  if (!q.is_constant()) split_primitive(q, u, v, 1, res.factors);

  MPoly prod = res.content;
  for (const auto& f : res.factors)
    for (int i = 0; i < f.mult; ++i) prod *= f.poly;
  MPoly ratio;
  if (!mpoly_try_divexact(p, prod, ratio) || !ratio.is_constant())
    fail_analysis("curve factorization beyond supported scope");
  res.content = res.content * ratio.constant_value();
  return res;
}

std::vector<VarFactor> factor_in_var(const MPoly& p, Sym x, bool* complete) {
  bool ok = true;
  if (p.is_zero()) fail_invalid("cannot factor the zero polynomial");
  std::vector<VarFactor> out;
  MPoly f = mpoly_normalize(p);
  MPoly c = mpoly_content_in(x, f);
  if (!c.is_constant()) f = mpoly_divexact(f, c);
  int low = strip_var_power(f, x);
  if (low > 0) out.push_back({MPoly::var(x), low});

  // multiplicity split: with f = prod p_i^{e_i}, g = prod p_i^{e_i-1} and
  // w = prod p_i; peeling gcd(w, g) off w isolates multiplicity classes
  if (f.degree_in(x) > 0) {
    MPoly g = mpoly_gcd(f, f.derivative(x));
    MPoly w = g.is_constant() ? f : mpoly_divexact(f, g);
    int i = 1;
    while (w.degree_in(x) > 0) {
      MPoly y = g.is_constant() ? MPoly(Rat(1)) : mpoly_gcd(w, g);
      MPoly piece = y.is_constant() ? w : mpoly_divexact(w, y);
      MPoly pc = mpoly_content_in(x, piece);
      if (!pc.is_constant()) piece = mpoly_divexact(piece, pc);
      if (piece.degree_in(x) > 0) emit_squarefree(piece, x, i, out, ok);
      if (y.is_constant()) break;
      w = y;
      g = mpoly_divexact(g, y);
      ++i;
    }
  }
  if (complete) *complete = ok;
  return out;
}

VarRoots roots_in_var(const MPoly& p, Sym x) {
  VarRoots res;
  for (const auto& vf : factor_in_var(p, x, &res.complete)) {
    int d = vf.poly.degree_in(x);
    if (d == 1) {
      RatFunc a(vf.poly.coeff_of(x, 1)), b(vf.poly.coeff_of(x, 0));
      res.roots.push_back({-b / a, vf.mult});
    } else if (d >= 2) {
      res.complete = false;
    }
  }
  return res;
}

std::optional<std::pair<RatFunc, RatFunc>> in_span(const MPoly& p, const MPoly& q,
                                                   const MPoly& r, Sym u, Sym v) {
  struct Row {
    MPoly p, q, r;
  };
  std::map<std::pair<int, int>, Row> rows;
  auto scatter = [&](const MPoly& f, MPoly Row::*slot) {
    for (int i = 0; i <= std::max(0, f.degree_in(u)); ++i) {
      MPoly ci = f.coeff_of(u, i);
      for (int j = 0; j <= std::max(0, ci.degree_in(v)); ++j) {
        MPoly cij = ci.coeff_of(v, j);
        if (!cij.is_zero()) rows[{i, j}].*slot = cij;
      }
    }
  };
  scatter(p, &Row::p);
  scatter(q, &Row::q);
  scatter(r, &Row::r);

  auto verify = [&](const RatFunc& a, const RatFunc& b) -> bool {
    return RatFunc(p) == a * RatFunc(q) + b * RatFunc(r);
  };
  for (auto i1 = rows.begin(); i1 != rows.end(); ++i1) {
    for (auto i2 = std::next(i1); i2 != rows.end(); ++i2) {
      const Row &r1 = i1->second, &r2 = i2->second;
      MPoly det = r1.q * r2.r - r2.q * r1.r;
      if (det.is_zero()) continue;
      RatFunc a(r1.p * r2.r - r2.p * r1.r, det);
      RatFunc b(r1.q * r2.p - r2.q * r1.p, det);
      if (verify(a, b)) return std::make_pair(a, b);
      return std::nullopt;
    }
  }
  // q and r span at most a line; match p against whichever is nonzero
  for (const auto& [m, row] : rows) {
    if (!row.q.is_zero()) {
      RatFunc a(row.p, row.q);
      if (verify(a, RatFunc())) return std::make_pair(a, RatFunc());
      return std::nullopt;
    }
    if (!row.r.is_zero()) {
      RatFunc b(row.p, row.r);
      if (verify(RatFunc(), b)) return std::make_pair(RatFunc(), b);
      return std::nullopt;
    }
  }
  if (p.is_zero()) return std::make_pair(RatFunc(), RatFunc());
  return std::nullopt;
}

bool same_pencil(const QRTInvariant& a, const QRTInvariant& b) {
  if (a.u != b.u || a.v != b.v) return false;
  Sym u = a.u, v = a.v;
  return in_span(a.num, b.num, b.den, u, v) && in_span(a.den, b.num, b.den, u, v) &&
         in_span(b.num, a.num, a.den, u, v) && in_span(b.den, a.num, a.den, u, v);
}

std::string invariant_str(const QRTInvariant& inv) {
  std::string s = "(" + inv.num.str() + ") / (" + inv.den.str() + ")";
  if (inv.kappa && !inv.kappa->is_zero()) s += " + " + inv.kappa->str();
  return s;
}

}  // namespace qrtkit
