#include "core/mapspec.hpp"

#include <algorithm>
#include <initializer_list>

#include "core/error.hpp"
#include "core/expr.hpp"

namespace qrtkit {

namespace {

// Other root of the pencil member through (u,v), read along x. With
// N_k, D_k the x-coefficients of num and den, the two roots along x sum to
// -(N1 D - N D1)/(N2 D - N D2) evaluated on the point.
RatFunc root_partner(const MPoly& N, const MPoly& D, Sym x) {
  MPoly N1 = N.coeff_of(x, 1), N2 = N.coeff_of(x, 2);
  MPoly D1 = D.coeff_of(x, 1), D2 = D.coeff_of(x, 2);
  MPoly den = N2 * D - N * D2;
  if (den.is_zero()) fail_analysis("degenerate pencil");
  MPoly num = N1 * D - N * D1;
  return -RatFunc::var(x) - RatFunc(num, den);
}

bool is_involution_in(const RatFunc& f, Sym x) {
  std::map<Sym, RatFunc> sub;
  sub[x] = f;
  return f.substitute_all(sub) == RatFunc::var(x);
}

// Inverse of f along the slot variable: g with g(f(x, .), .) = x. An f
// involutive in the slot serves as its own inverse.
RatFunc backward_rule(const RatFunc& f, Sym slot) {
  if (is_involution_in(f, slot)) return f;
  Sym t = sym_intern("#t");
  std::optional<RatFunc> s = mobius_solve(f, slot, RatFunc::var(t));
  if (!s) fail_invalid("update rule is not birational");
  std::map<Sym, RatFunc> rn;
  rn[t] = RatFunc::var(slot);
  return s->substitute_all(rn);
}

std::map<Sym, RatFunc> bindings(const MapSpec& m, long n, std::initializer_list<const RatFunc*> rules) {
  std::vector<Sym> idx;
  for (const RatFunc* r : rules)
    for (Sym s : indexed_symbols(*r))
      if (std::find(idx.begin(), idx.end(), s) == idx.end()) idx.push_back(s);
  if (idx.empty()) return {};
  return m.params.at_step(n, idx);
}

RatFunc bind_state(const RatFunc& rule, const std::map<Sym, RatFunc>& coeff, Sym u, const RatFunc& a,
                   Sym v, const RatFunc& b) {
  std::map<Sym, RatFunc> sub = coeff;
  sub[u] = a;
  sub[v] = b;
  return rule.substitute_all(sub);
}

}  // namespace

std::optional<RatFunc> mobius_solve(const RatFunc& expr, Sym x, const RatFunc& rhs) {
  const MPoly& N = expr.num();
  const MPoly& D = expr.den();
  if (!expr.depends_on(x)) return std::nullopt;
  if (N.degree_in(x) > 1 || D.degree_in(x) > 1) return std::nullopt;
  RatFunc a = RatFunc(N.coeff_of(x, 1)) - rhs * RatFunc(D.coeff_of(x, 1));
  RatFunc b = RatFunc(N.coeff_of(x, 0)) - rhs * RatFunc(D.coeff_of(x, 0));
  if (a.is_zero()) return std::nullopt;
  return -b / a;
}

MapSpec map_from_invariant(const QRTInvariant& inv, bool inverse_branch) {
  MapSpec m;
  m.u = inv.u;
  m.v = inv.v;
  m.reversed = inverse_branch;
  if (inv.symmetric) {
    m.kind = MapKind::ThreePoint;
    m.update = root_partner(inv.num, inv.den, inv.u);
    m.back_update = m.update;
  } else {
    m.kind = MapKind::AsymmetricPair;
    m.h_update = root_partner(inv.num, inv.den, inv.u);
    m.v_update = root_partner(inv.num, inv.den, inv.v);
    m.h_back = m.h_update;
    m.v_back = m.v_update;
  }
  return m;
}

MapSpec inverse_map(const MapSpec& m) {
  MapSpec r = m;
  r.reversed = !r.reversed;
  return r;
}

MapSpec three_point_map(const RatFunc& update, Sym u, Sym v, ParamModel params) {
  if (u == v) fail_invalid("map needs two distinct state variables");
  if (!update.depends_on(v) && !update.depends_on(u))
    fail_invalid("update rule does not involve the state");
  MapSpec m;
  m.kind = MapKind::ThreePoint;
  m.u = u;
  m.v = v;
  m.update = update;
  m.back_update = update.depends_on(u) ? backward_rule(update, u) : update;
  m.params = std::move(params);
  return m;
}

MapSpec asymmetric_map(const RatFunc& h, const RatFunc& v_upd, Sym u, Sym v, ParamModel params) {
  if (u == v) fail_invalid("map needs two distinct state variables");
  MapSpec m;
  m.kind = MapKind::AsymmetricPair;
  m.u = u;
  m.v = v;
  m.h_update = h;
  m.v_update = v_upd;
  m.h_back = h.depends_on(u) ? backward_rule(h, u) : h;
  m.v_back = v_upd.depends_on(v) ? backward_rule(v_upd, v) : v_upd;
  m.params = std::move(params);
  return m;
}

SymState step_symbolic(const MapSpec& m, const SymState& s, bool backward) {
  bool down = backward != m.reversed;
  long k = m.kind == MapKind::KStep ? m.stride : 1;
  SymState r;
  if (m.kind == MapKind::AsymmetricPair) {
    if (!down) {
      auto coeff = bindings(m, s.tau, {&m.h_update, &m.v_update});
      RatFunc U = bind_state(m.h_update, coeff, m.u, s.a, m.v, s.b);
      RatFunc V = bind_state(m.v_update, coeff, m.u, U, m.v, s.b);
      r = {U, V, s.tau + 1};
    } else {
      auto coeff = bindings(m, s.tau - 1, {&m.h_back, &m.v_back});
      RatFunc V = bind_state(m.v_back, coeff, m.u, s.a, m.v, s.b);
      RatFunc U = bind_state(m.h_back, coeff, m.u, s.a, m.v, V);
      r = {U, V, s.tau - 1};
    }
    return r;
  }
  if (!down) {
    auto coeff = bindings(m, s.tau, {&m.update});
    RatFunc nxt = bind_state(m.update, coeff, m.u, s.a, m.v, s.b);
    r = {s.b, nxt, s.tau + k};
  } else {
    auto coeff = bindings(m, s.tau - k, {&m.back_update});
    RatFunc prv = bind_state(m.back_update, coeff, m.u, s.b, m.v, s.a);
    r = {prv, s.a, s.tau - k};
  }
  return r;
}

bool check_invariant(const MapSpec& m, const QRTInvariant& inv) {
  RatFunc K(inv.num, inv.den);
  SymState s{RatFunc::var(m.u), RatFunc::var(m.v), 0};
  SymState t = step_symbolic(m, s);
  std::map<Sym, RatFunc> sub;
  sub[m.u] = t.a;
  sub[m.v] = t.b;
  return K.substitute_all(sub) == K;
}

QRTInvariant multi_step_invariant(const MapSpec& m, const QRTInvariant& inv, int k) {
  if (m.kind == MapKind::AsymmetricPair) fail_invalid("multi-step form needs a three-point map");
  if (k == 1) return inv;
  if (k != 2 && k != 3) fail_invalid("step count must be 1, 2, or 3");

  Sym ubar = sym_intern("#u"), w = sym_intern("#w"), mid = sym_intern("#m");
  RatFunc mid_expr;  // x_{n-1} as a function of (x_{n-k}, x_n) = (#u, #w)
  if (k == 2) {
    std::map<Sym, RatFunc> sub;
    sub[m.u] = RatFunc::var(ubar);
    sub[m.v] = RatFunc::var(mid);
    RatFunc rel = shift_indexed(m.update, -1).substitute_all(sub);
    std::optional<RatFunc> sol = mobius_solve(rel, mid, RatFunc::var(w));
    if (!sol) fail_analysis("cannot eliminate");
    mid_expr = *sol;
  } else {
    std::map<Sym, RatFunc> sub1;
    sub1[m.u] = RatFunc::var(ubar);
    sub1[m.v] = RatFunc::var(mid);
    RatFunc inner = shift_indexed(m.update, -2).substitute_all(sub1);  // x_{n-1} via (x_{n-3}, m1)
    std::map<Sym, RatFunc> sub2;
    sub2[m.u] = RatFunc::var(mid);
    sub2[m.v] = inner;
    RatFunc outer = shift_indexed(m.update, -1).substitute_all(sub2);  // x_n via m1
    std::optional<RatFunc> m1 = mobius_solve(outer, mid, RatFunc::var(w));
    if (!m1) fail_analysis("cannot eliminate");
    std::map<Sym, RatFunc> sub3;
    sub3[mid] = *m1;
    mid_expr = inner.substitute_all(sub3);
  }

  RatFunc K(inv.num, inv.den);
  std::map<Sym, RatFunc> pair_sub;
  pair_sub[inv.u] = mid_expr;
  pair_sub[inv.v] = RatFunc::var(w);
  RatFunc Kk = K.substitute_all(pair_sub);
  std::map<Sym, RatFunc> rename;
  rename[ubar] = RatFunc::var(inv.u);
  rename[w] = RatFunc::var(inv.v);
  Kk = Kk.substitute_all(rename);
  if (Kk.is_constant() || !Kk.depends_on(inv.u) || !Kk.depends_on(inv.v))
    fail_analysis("invariant collapses");
  QRTInvariant out = make_invariant(Kk, inv.u, inv.v);
  out.kappa = inv.kappa;
  return out;
}

MapSpec eliminate(const MapSpec& m, KeepVar keep) {
  if (m.kind != MapKind::AsymmetricPair) fail_invalid("map is not an asymmetric pair");
  Sym X = m.u, Y = m.v;
  Sym dropped = keep == KeepVar::X ? Y : X;
  for (const RatFunc* r : {&m.h_update, &m.v_update})
    if (r->num().degree_in(dropped) > 1 || r->den().degree_in(dropped) > 1)
      fail_analysis("cannot eliminate");

  Sym t = sym_intern("#cur");
  RatFunc rule;
  Sym kept = keep == KeepVar::X ? X : Y;
  if (keep == KeepVar::X) {
    if (!m.h_update.depends_on(Y)) {
      std::map<Sym, RatFunc> sub;
      sub[X] = RatFunc::var(t);
      rule = m.h_update.substitute_all(sub);
    } else {
      // Y_{n-1} from the horizontal relation one step down, then the chain
      // V, H forward again; coefficient indices shift accordingly.
      RatFunc h_prev = shift_indexed(m.h_update, -1);
      std::optional<RatFunc> g = mobius_solve(h_prev, Y, RatFunc::var(t));
      if (!g) fail_analysis("cannot eliminate");
      // g is in (X = X_{n-1}, t = X_n)
      RatFunc v_prev = shift_indexed(m.v_update, -1);
      std::map<Sym, RatFunc> vsub;
      vsub[X] = RatFunc::var(t);
      vsub[Y] = *g;
      RatFunc y_cur = v_prev.substitute_all(vsub);  // Y_n via (X_{n-1}, X_n)
      std::map<Sym, RatFunc> hsub;
      hsub[X] = RatFunc::var(t);
      hsub[Y] = y_cur;
      rule = m.h_update.substitute_all(hsub);
    }
  } else {
    if (!m.v_update.depends_on(X)) {
      std::map<Sym, RatFunc> sub;  // relation in Y alone; current value sits in t
      sub[Y] = RatFunc::var(t);
      rule = m.v_update.substitute_all(sub);
    } else {
      RatFunc v_prev = shift_indexed(m.v_update, -1);
      std::optional<RatFunc> wsol = mobius_solve(v_prev, X, RatFunc::var(t));
      if (!wsol) fail_analysis("cannot eliminate");
      // wsol is X_n via (Y = Y_{n-1}, t = Y_n)
      std::map<Sym, RatFunc> hsub;
      hsub[X] = *wsol;
      hsub[Y] = RatFunc::var(t);
      RatFunc x_next = m.h_update.substitute_all(hsub);  // X_{n+1}
      std::map<Sym, RatFunc> vsub;
      vsub[X] = x_next;
      vsub[Y] = RatFunc::var(t);
      rule = m.v_update.substitute_all(vsub);
    }
  }

  // state symbols of the collapsed map: (kept#prev, kept)
  Sym prev = sym_intern(sym_name(kept) + "#prev");
  std::map<Sym, RatFunc> rn;
  rn[kept] = RatFunc::var(prev);
  rn[t] = RatFunc::var(kept);
  rule = rule.substitute_all(rn);
  if (rule.is_constant()) fail_analysis("cannot eliminate");
  return three_point_map(rule, prev, kept, m.params);
}

}  // namespace qrtkit
