#include "core/factor.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "core/error.hpp"

namespace qrtkit {

// ---- conversions ----

UPoly upoly_from_mpoly(const MPoly& p, Sym x) {
  std::vector<Rat> cs(static_cast<std::size_t>(std::max(p.degree_in(x), 0)) + 1, Rat(0));
  for (auto& [m, c] : p.terms()) {
    std::uint16_t k = m.exp(x);
    if (m.total_degree() != k) fail_invalid("polynomial not univariate in " + sym_name(x));
    cs[k] = c;
  }
  return UPoly::from_coeffs(std::move(cs));
}

MPoly mpoly_from_upoly(const UPoly& p, Sym x) {
  MPoly r;
  for (std::size_t i = 0; i < p.c.size(); ++i)
    if (p.c[i] != 0) r.add_term(Mono::var(x, static_cast<std::uint16_t>(i)), p.c[i]);
  return r;
}

bool rat_sqrt(const Rat& q, Rat& out) {
  if (q < 0) return false;
  if (q == 0) {
    out = 0;
    return true;
  }
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return false;
  Rat r;
  mpz_sqrt(r.get_num().get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(r.get_den().get_mpz_t(), q.get_den().get_mpz_t());
  out = r;
  return true;
}

// ---- integer factorization (for rational root candidates) ----

namespace {

gmp_randstate_t& rng() {
  static gmp_randstate_t st;
  static bool init = [] {
    gmp_randinit_default(st);
    gmp_randseed_ui(st, 0x5eed);
    return true;
  }();
  (void)init;
  return st;
}

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_divisible_ui_p(n.get_mpz_t(), 2)) return 2;
  mpz_class x, y, c, g, q, ys, t;
  while (true) {
    mpz_urandomm(y.get_mpz_t(), rng(), n.get_mpz_t());
    mpz_urandomm(c.get_mpz_t(), rng(), n.get_mpz_t());
    if (c == 0) c = 1;
    g = 1;
    q = 1;
    unsigned long r = 1, m = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          t = x - y;
          mpz_abs(t.get_mpz_t(), t.get_mpz_t());
          q = q * t % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        t = x - ys;
        mpz_abs(t.get_mpz_t(), t.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n) return g;
  }
}

void factor_integer(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long d : {2ul, 3ul, 5ul, 7ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++out[mpz_class(d)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  unsigned long d = 11;
  while (d < 65536 && mpz_cmp_ui(n.get_mpz_t(), d * d) >= 0) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++out[mpz_class(d)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
    d += 2;
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  mpz_class f = pollard_brent(n);
  factor_integer(f, out);
  factor_integer(n / f, out);
}

std::vector<mpz_class> divisors_of(const mpz_class& n, std::size_t cap) {
  std::map<mpz_class, unsigned> pf;
  factor_integer(n, pf);
  std::vector<mpz_class> divs{1};
  for (auto& [p, e] : pf) {
    std::size_t base = divs.size();
    mpz_class pk(1);
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
    if (divs.size() > cap) fail_analysis("rational root search exceeded divisor budget");
  }
  return divs;
}

}  // namespace

std::vector<Rat> rational_roots(const UPoly& f0) {
  std::vector<Rat> roots;
  if (f0.is_zero()) fail_invalid("roots of zero polynomial");
  UPoly f = f0;
  std::size_t low = 0;
  while (low < f.c.size() && f.c[low] == 0) ++low;
  if (low > 0) {
    roots.push_back(Rat(0));
    f.c.erase(f.c.begin(), f.c.begin() + static_cast<long>(low));
  }
  if (f.deg() < 1) return roots;
  f = f.primitive();
  if (f.deg() == 1) {
    roots.push_back(-f.c[0] / f.c[1]);
    return roots;
  }
  mpz_class a0 = f.c[0].get_num(), an = f.lc().get_num();
  mpz_class f1 = f.eval(Rat(1)).get_num(), fm1 = f.eval(Rat(-1)).get_num();
  auto divs0 = divisors_of(a0, 3000);
  auto divsN = divisors_of(an, 3000);
  if (divs0.size() * divsN.size() > 200000)
    fail_analysis("rational root search exceeded candidate budget");
  mpz_class t;
  for (auto& q : divsN) {
    for (auto& p : divs0) {
      mpz_gcd(t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      if (t != 1) continue;
      for (int sgn : {1, -1}) {
        mpz_class sp = sgn > 0 ? p : mpz_class(-p);
        // p/q a root forces (p - mq) | f(m)
        t = sp - q;
        if (f1 != 0 && t != 0 && !mpz_divisible_p(f1.get_mpz_t(), t.get_mpz_t())) continue;
        t = sp + q;
        if (fm1 != 0 && t != 0 && !mpz_divisible_p(fm1.get_mpz_t(), t.get_mpz_t())) continue;
        Rat cand(sp, q);
        cand.canonicalize();
        if (f.eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- cyclotomics ----

UPoly cyclotomic(unsigned m) {
  static std::map<unsigned, UPoly> cache;
  if (m == 0) fail_invalid("cyclotomic order must be positive");
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  UPoly num;  // x^m - 1
  {
    std::vector<Rat> cs(m + 1, Rat(0));
    cs[0] = Rat(-1);
    cs[m] = Rat(1);
    num = UPoly::from_coeffs(std::move(cs));
  }
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    UPoly q;
    if (!upoly_try_divexact(num, cyclotomic(d), q))
      fail_analysis("cyclotomic recursion failed");
    num = q;
  }
  cache[m] = num;
  return num;
}

std::optional<unsigned> cyclotomic_order(const UPoly& f, unsigned max_m) {
  if (f.deg() < 1) return std::nullopt;
  for (unsigned m = 1; m <= max_m; ++m) {
    UPoly cm = cyclotomic(m);
    if (cm.deg() == f.deg() && cm == f) return m;
  }
  return std::nullopt;
}

// ---- univariate factorization ----

namespace {

UPoly compose(const UPoly& f, const UPoly& g) {
  UPoly r;
  for (std::size_t i = f.c.size(); i-- > 0;) r = r * g + UPoly::constant(f.c[i]);
  return r;
}

std::vector<std::pair<UPoly, int>> yun_squarefree(const UPoly& f) {
  // f monic, degree >= 1
  std::vector<std::pair<UPoly, int>> out;
  UPoly fp = f.derivative();
  UPoly a = upoly_gcd(f, fp).monic();
  if (a.deg() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  UPoly b, c, d, q, tmp;
  upoly_divmod(f, a, b, tmp);
  upoly_divmod(fp, a, c, tmp);
  d = c - b.derivative();
  int i = 1;
  while (b.deg() > 0) {
    UPoly p = upoly_gcd(b, d).monic();
    if (p.deg() > 0) out.emplace_back(p, i);
    upoly_divmod(b, p, q, tmp);
    b = q;
    upoly_divmod(d, p, c, tmp);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// Split a monic squarefree quartic with no rational roots into two monic
// quadratics, when that is possible over Q.
std::optional<std::pair<UPoly, UPoly>> quartic_split(const UPoly& f) {
  Rat a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
  // depress with x -> y - a/4
  Rat p = b - a * a * Rat(3, 8);
  Rat q = c - a * b / 2 + a * a * a / 8;
  Rat r = d - a * c / 4 + a * a * b / 16 - a * a * a * a * Rat(3, 256);

  auto quad = [](const Rat& lin, const Rat& cst) {
    return UPoly::from_coeffs({cst, lin, Rat(1)});
  };
  std::optional<std::pair<UPoly, UPoly>> split;
  if (q == 0) {
    Rat s;
    if (rat_sqrt(p * p - Rat(4) * r, s)) {
      split = {quad(Rat(0), (p + s) / 2), quad(Rat(0), (p - s) / 2)};
    } else {
      Rat beta;
      if (rat_sqrt(r, beta)) {
        for (Rat bb : {Rat(beta), Rat(-beta)}) {
          Rat alpha;
          if (rat_sqrt(bb * 2 - p, alpha) && alpha != 0) {
            split = {quad(alpha, bb), quad(-alpha, bb)};
            break;
          }
        }
      }
    }
  } else {
    UPoly resolvent =
        UPoly::from_coeffs({-q * q, p * p - Rat(4) * r, Rat(2) * p, Rat(1)});
    for (const Rat& z : rational_roots(resolvent)) {
      Rat alpha;
      if (z == 0 || !rat_sqrt(z, alpha)) continue;
      Rat beta = (p + z - q / alpha) / 2;
      Rat gamma = (p + z + q / alpha) / 2;
      split = {quad(alpha, beta), quad(-alpha, gamma)};
      break;
    }
  }
  if (!split) return std::nullopt;
  UPoly shift = UPoly::from_coeffs({a / 4, Rat(1)});  // y = x + a/4
  UPoly f1 = compose(split->first, shift);
  UPoly f2 = compose(split->second, shift);
  if (!(f1 * f2 == f)) fail_analysis("quartic split verification failed");
  return std::make_pair(f1, f2);
}

UPoly positive_primitive(const UPoly& f) {
  UPoly r = f.primitive();
  if (!r.is_zero() && r.lc() < 0) r = -r;
  return r;
}

// g: squarefree part, monic over Q. Appends integer-primitive irreducible
// factors; returns false when a degree >= 5 remainder could not be resolved.
bool decompose_squarefree(const UPoly& g, std::vector<UPoly>& out) {
  UPoly rem = positive_primitive(g);
  for (const Rat& r : rational_roots(rem)) {
    UPoly lin = UPoly::from_coeffs({Rat(mpz_class(-r.get_num())), Rat(r.get_den())});
    UPoly q;
    if (!upoly_try_divexact(rem, lin, q)) fail_analysis("root division failed");
    out.push_back(positive_primitive(lin));
    rem = positive_primitive(q);
  }
  for (unsigned m = 2; m <= 64 && rem.deg() > 1; ++m) {
    UPoly cm = cyclotomic(m);
    if (cm.deg() > rem.deg()) continue;
    UPoly q;
    if (upoly_try_divexact(rem, cm, q)) {
      out.push_back(cm);
      rem = positive_primitive(q);
    }
  }
  if (rem.deg() <= 0) return true;
  if (rem.deg() <= 3) {  // no rational roots left, so these are irreducible
    out.push_back(rem);
    return true;
  }
  if (rem.deg() == 4) {
    if (auto sp = quartic_split(rem.monic())) {
      out.push_back(positive_primitive(sp->first));
      out.push_back(positive_primitive(sp->second));
    } else {
      out.push_back(rem);
    }
    return true;
  }
  out.push_back(rem);
  return false;
}

}  // namespace

UFactorization factor_univariate(const UPoly& f) {
  if (f.is_zero()) fail_invalid("factorization of zero polynomial");
  UFactorization out;
  out.unit = Rat(1);
  UPoly work = f;
  std::size_t low = 0;
  while (low < work.c.size() && work.c[low] == 0) ++low;
  if (low > 0) {
    work.c.erase(work.c.begin(), work.c.begin() + static_cast<long>(low));
    out.factors.push_back({UPoly::x(), static_cast<int>(low)});
  }
  if (work.deg() >= 1) {
    for (auto& [part, mult] : yun_squarefree(work.monic())) {
      std::vector<UPoly> irr;
      if (!decompose_squarefree(part, irr)) out.complete = false;
      for (auto& fac : irr) out.factors.push_back({fac, mult});
    }
  }
  // the unit is whatever scalar is left over
  UPoly prod = UPoly::constant(Rat(1));
  for (auto& fac : out.factors) prod = prod * fac.f.pow(static_cast<unsigned>(fac.mult));
  UPoly q, r;
  upoly_divmod(f, prod, q, r);
  if (!r.is_zero() || q.deg() != 0) fail_analysis("factorization self-check failed");
  out.unit = q.c[0];
  return out;
}

// ---- multivariate ----

MPoly mpoly_normalize(const MPoly& p) {
  if (p.is_zero()) return p;
  MPoly r = p.primitive_part();
  if (r.leading_coeff() < 0) r = -r;
  return r;
}

bool mpoly_try_divexact(const MPoly& a, const MPoly& b, MPoly& q) {
  if (b.is_zero()) fail_invalid("division by zero polynomial");
  q = MPoly();
  if (a.is_zero()) return true;
  if (b.is_constant()) {
    q = a * (1 / b.constant_value());
    return true;
  }
  MPoly r = a;
  while (!r.is_zero()) {
    if (!b.leading_mono().divides(r.leading_mono())) return false;
    Mono qm = b.leading_mono().quotient_of(r.leading_mono());
    Rat qc = r.leading_coeff() / b.leading_coeff();
    q.add_term(qm, qc);
    r -= MPoly::monomial(qm, qc) * b;
  }
  return true;
}

MPoly mpoly_divexact(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!mpoly_try_divexact(a, b, q)) fail_analysis("inexact polynomial division");
  return q;
}

MPoly mpoly_content_in(Sym x, const MPoly& p) {
  if (p.is_zero()) return MPoly();
  MPoly g;
  for (auto& c : p.coeffs_in(x)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? mpoly_normalize(c) : mpoly_gcd(g, c);
    if (g.is_constant()) return MPoly(Rat(1));
  }
  return g;
}

namespace {

// pseudo-remainder of A by B in x: lc_x(B)^(deg A - deg B + 1) * A mod B
MPoly prem_in(Sym x, MPoly A, const MPoly& B) {
  int db = B.degree_in(x);
  MPoly lcB = B.coeff_of(x, db);
  int da = A.degree_in(x);
  if (da < db) return A;
  int e = da - db + 1;
  while (!A.is_zero() && A.degree_in(x) >= db) {
    int dA = A.degree_in(x);
    MPoly lcA = A.coeff_of(x, dA);
    A = A * lcB - lcA * MPoly::var(x).pow(static_cast<unsigned>(dA - db)) * B;
    --e;
  }
  while (e-- > 0) A = A * lcB;
  return A;
}

}  // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return mpoly_normalize(b);
  if (b.is_zero()) return mpoly_normalize(a);
  if (a.is_constant() || b.is_constant()) return MPoly(Rat(1));

  auto sa = a.symbols(), sb = b.symbols();
  std::vector<Sym> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  if (common.empty()) return MPoly(Rat(1));

  if (sa.size() == 1 && sb.size() == 1) {
    Sym x = common[0];
    UPoly g = upoly_gcd(upoly_from_mpoly(a, x), upoly_from_mpoly(b, x));
    return mpoly_from_upoly(g, x);
  }

  Sym x = common[0];
  int best = INT_MAX;
  for (Sym s : common) {
    int d = std::min(a.degree_in(s), b.degree_in(s));
    if (d > 0 && d < best) {
      best = d;
      x = s;
    }
  }

  MPoly ca = mpoly_content_in(x, a);
  MPoly cb = mpoly_content_in(x, b);
  MPoly A = mpoly_divexact(a, ca);
  MPoly B = mpoly_divexact(b, cb);
  MPoly cd = mpoly_gcd(ca, cb);

  if (A.degree_in(x) < B.degree_in(x)) std::swap(A, B);
  if (B.degree_in(x) == 0) return mpoly_normalize(cd);

  MPoly g(Rat(1)), h(Rat(1));
  while (true) {
    int d = A.degree_in(x) - B.degree_in(x);
    MPoly R = prem_in(x, A, B);
    if (R.is_zero()) break;
    if (R.degree_in(x) == 0) {
      B = MPoly(Rat(1));
      break;
    }
    A = B;
    B = mpoly_divexact(R, g * h.pow(static_cast<unsigned>(d)));
    g = A.coeff_of(x, A.degree_in(x));
    if (d == 1)
      h = g;
    else if (d > 1)
      h = mpoly_divexact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
  }
  MPoly pp = B.degree_in(x) == 0 ? MPoly(Rat(1)) : mpoly_divexact(B, mpoly_content_in(x, B));
  return mpoly_normalize(cd * pp);
}

MPoly resultant_in(Sym x, const MPoly& f, const MPoly& g) {
  int m = f.degree_in(x), n = g.degree_in(x);
  if (f.is_zero() || g.is_zero()) return MPoly();
  if (m == 0 && n == 0) return MPoly(Rat(1));
  if (m == 0) return f.pow(static_cast<unsigned>(n));
  if (n == 0) return g.pow(static_cast<unsigned>(m));

  int N = m + n;
  std::vector<std::vector<MPoly>> M(static_cast<std::size_t>(N),
                                    std::vector<MPoly>(static_cast<std::size_t>(N)));
  auto fc = f.coeffs_in(x), gc = g.coeffs_in(x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = fc[static_cast<std::size_t>(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = gc[static_cast<std::size_t>(n - j)];

  // fraction-free elimination
  MPoly prev(Rat(1));
  int sign = 1;
  for (int k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      int r = -1;
      for (int i = k + 1; i < N; ++i)
        if (!M[i][k].is_zero()) {
          r = i;
          break;
        }
      if (r < 0) return MPoly();
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j)
        M[i][j] = mpoly_divexact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
      M[i][k] = MPoly();
    }
    prev = M[k][k];
  }
  MPoly det = M[static_cast<std::size_t>(N - 1)][static_cast<std::size_t>(N - 1)];
  return sign < 0 ? -det : det;
}

MPoly discriminant_in(Sym x, const MPoly& f) {
  int m = f.degree_in(x);
  if (m < 1) fail_invalid("discriminant needs positive degree");
  MPoly res = resultant_in(x, f, f.derivative(x));
  MPoly disc = mpoly_divexact(res, f.coeff_of(x, m));
  if ((static_cast<long>(m) * (m - 1) / 2) % 2) disc = -disc;
  return disc;
}

std::optional<MPoly> mpoly_sqrt(const MPoly& f) {
  if (f.is_zero()) return MPoly();
  if (f.is_constant()) {
    Rat s;
    if (!rat_sqrt(f.constant_value(), s)) return std::nullopt;
    return MPoly(s);
  }
  const Mono& lm = f.leading_mono();
  Mono half;
  for (auto& [s, k] : lm.e) {
    if (k % 2) return std::nullopt;
    half.e.emplace_back(s, static_cast<std::uint16_t>(k / 2));
  }
  Rat sc;
  if (!rat_sqrt(f.leading_coeff(), sc)) {
    // allow negative leading coefficient only if -f is a square; a square's
    // grlex leading coefficient is itself a leading coefficient squared > 0
    return std::nullopt;
  }
  MPoly g = MPoly::monomial(half, sc);
  MPoly rem = f - g * g;
  while (!rem.is_zero()) {
    const Mono& lr = rem.leading_mono();
    const Mono& lg = g.leading_mono();
    if (!lg.divides(lr)) return std::nullopt;
    Mono tm = lg.quotient_of(lr);
    Rat tc = rem.leading_coeff() / (g.leading_coeff() * 2);
    MPoly t = MPoly::monomial(tm, tc);
    rem -= g * t * Rat(2) + t * t;
    g += t;
  }
  return g;
}

}  // namespace qrtkit
