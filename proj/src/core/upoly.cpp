#include "core/upoly.hpp"

#include <sstream>

#include "core/error.hpp"

namespace qrtkit {

UPoly UPoly::constant(const Rat& a) {
  UPoly p;
  if (a != 0) p.c.push_back(a);
  return p;
}

UPoly UPoly::x() {
  UPoly p;
  p.c = {Rat(0), Rat(1)};
  return p;
}

UPoly UPoly::from_coeffs(std::vector<Rat> cs) {
  UPoly p;
  p.c = std::move(cs);
  while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
  return p;
}

const Rat& UPoly::coeff(int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= static_cast<int>(c.size())) return zero;
  return c[i];
}

const Rat& UPoly::lc() const {
  if (c.empty()) fail_invalid("leading coefficient of zero polynomial");
  return c.back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& a : r.c) a = -a;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return from_coeffs(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> r(c.size() + o.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return from_coeffs(std::move(r));
}

UPoly UPoly::operator*(const Rat& a) const {
  if (a == 0) return {};
  UPoly r = *this;
  for (auto& v : r.c) v *= a;
  return r;
}

UPoly UPoly::shifted(int k) const {
  if (is_zero()) return {};
  UPoly r;
  r.c.assign(k, Rat(0));
  r.c.insert(r.c.end(), c.begin(), c.end());
  return r;
}

UPoly UPoly::pow(unsigned k) const {
  UPoly r = constant(Rat(1));
  UPoly b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Rat UPoly::eval(const Rat& v) const {
  Rat r(0);
  for (std::size_t i = c.size(); i-- > 0;) r = r * v + c[i];
  return r;
}

UPoly UPoly::derivative() const {
  if (c.size() <= 1) return {};
  std::vector<Rat> r(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rat(static_cast<long>(i));
  return from_coeffs(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * (1 / lc());
}

Rat UPoly::content() const {
  if (is_zero()) return Rat(0);
  mpz_class g(0), l(1);
  for (auto& a : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den().get_mpz_t());
  }
  Rat r(g, l);
  r.canonicalize();
  return r;
}

UPoly UPoly::primitive() const {
  if (is_zero()) return {};
  Rat ct = content();
  return *this * (1 / ct);
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    const Rat& a = c[i];
    if (a == 0) continue;
    Rat mag = a > 0 ? Rat(a) : Rat(-a);
    if (first)
      os << (a < 0 ? "-" : "");
    else
      os << (a < 0 ? " - " : " + ");
    first = false;
    if (mag != 1 || i == 0) os << rat_str(mag);
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) fail_invalid("division by zero polynomial");
  std::vector<Rat> rem = a.c;
  std::vector<Rat> quo;
  int db = b.deg();
  if (a.deg() >= db) quo.assign(a.deg() - db + 1, Rat(0));
  for (int i = a.deg(); i >= db; --i) {
    if (rem[i] == 0) continue;
    Rat f = rem[i] / b.lc();
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c[j];
  }
  q = UPoly::from_coeffs(std::move(quo));
  r = UPoly::from_coeffs(std::move(rem));
}

bool upoly_try_divexact(const UPoly& a, const UPoly& b, UPoly& q) {
  UPoly r;
  upoly_divmod(a, b, q, r);
  return r.is_zero();
}

// ---- modular gcd ----

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

struct ZpPoly {
  std::vector<u64> c;  // trailing nonzero
  int deg() const { return static_cast<int>(c.size()) - 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

ZpPoly zp_mod(const std::vector<mpz_class>& ic, u64 p) {
  ZpPoly r;
  r.c.resize(ic.size());
  mpz_class t;
  for (std::size_t i = 0; i < ic.size(); ++i) {
    mpz_mod_ui(t.get_mpz_t(), ic[i].get_mpz_t(), p);
    r.c[i] = t.get_ui();
  }
  r.trim();
  return r;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, u64 p) {
  while (!b.c.empty()) {
    // a mod b
    u64 inv = invmod(b.c.back(), p);
    for (int i = a.deg(); i >= b.deg(); --i) {
      u64 top = a.c[i];
      if (!top) continue;
      u64 f = mulmod(top, inv, p);
      for (int j = 0; j <= b.deg(); ++j) {
        u64 sub = mulmod(f, b.c[j], p);
        u64& tgt = a.c[i - b.deg() + j];
        tgt = (tgt >= sub) ? tgt - sub : tgt + p - sub;
      }
    }
    a.trim();
    std::swap(a, b);
  }
  if (!a.c.empty()) {
    u64 inv = invmod(a.c.back(), p);
    for (auto& v : a.c) v = mulmod(v, inv, p);
  }
  return a;
}

std::vector<mpz_class> integer_coeffs(const UPoly& f) {
  // f is expected integer-primitive already
  std::vector<mpz_class> out(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i].get_den() != 1) fail_invalid("integer_coeffs on non-integer polynomial");
    out[i] = f.c[i].get_num();
  }
  return out;
}

}  // namespace

UPoly upoly_gcd(const UPoly& a0, const UPoly& b0) {
  if (a0.is_zero() && b0.is_zero()) return {};
  if (a0.is_zero()) {
    UPoly r = b0.primitive();
    return r.lc() < 0 ? -r : r;
  }
  if (b0.is_zero()) {
    UPoly r = a0.primitive();
    return r.lc() < 0 ? -r : r;
  }
  if (a0.is_constant() || b0.is_constant()) return UPoly::constant(Rat(1));

  UPoly A = a0.primitive(), B = b0.primitive();
  if (A.lc() < 0) A = -A;
  if (B.lc() < 0) B = -B;
  auto ia = integer_coeffs(A), ib = integer_coeffs(B);

  mpz_class glc;
  mpz_gcd(glc.get_mpz_t(), ia.back().get_mpz_t(), ib.back().get_mpz_t());

  mpz_class prime(1);
  mpz_class modulus(0);  // product of used primes
  std::vector<mpz_class> acc;
  int best_deg = std::min(A.deg(), B.deg()) + 1;
  mpz_class two62;
  mpz_ui_pow_ui(two62.get_mpz_t(), 2, 62);
  prime = two62;

  for (int iter = 0; iter < 200; ++iter) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    u64 p = prime.get_ui();
    if (mpz_divisible_ui_p(ia.back().get_mpz_t(), p) ||
        mpz_divisible_ui_p(ib.back().get_mpz_t(), p))
      continue;
    ZpPoly ga = zp_mod(ia, p), gb = zp_mod(ib, p);
    ZpPoly g = zp_gcd(ga, gb, p);
    if (g.deg() == 0) return UPoly::constant(Rat(1));
    if (g.deg() > best_deg) continue;  // unlucky prime
    mpz_class lcm;                     // scale monic image by glc mod p
    mpz_mod_ui(lcm.get_mpz_t(), glc.get_mpz_t(), p);
    u64 scale = lcm.get_ui() % p;
    if (g.deg() < best_deg) {
      // all previous primes were unlucky; restart accumulation
      best_deg = g.deg();
      modulus = 0;
    }
    if (modulus == 0) {
      acc.assign(g.c.size(), mpz_class(0));
      for (std::size_t i = 0; i < g.c.size(); ++i) acc[i] = mulmod(g.c[i], scale, p);
      modulus = prime;
    } else {
      // CRT combine
      mpz_class pm(prime), inv;
      mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pm.get_mpz_t());
      for (std::size_t i = 0; i < acc.size(); ++i) {
        mpz_class target(static_cast<unsigned long>(mulmod(g.c[i], scale, p)));
        mpz_class cur_mod_p;
        mpz_mod(cur_mod_p.get_mpz_t(), acc[i].get_mpz_t(), pm.get_mpz_t());
        mpz_class diff = (target - cur_mod_p) % pm;
        if (diff < 0) diff += pm;
        acc[i] += modulus * ((diff * inv) % pm);
      }
      modulus *= prime;
    }
    // symmetric lift and division test
    std::vector<Rat> lift(acc.size());
    mpz_class half = modulus / 2;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      mpz_class v = acc[i] % modulus;
      if (v < 0) v += modulus;
      if (v > half) v -= modulus;
      lift[i] = Rat(v);
    }
    UPoly cand = UPoly::from_coeffs(std::move(lift)).primitive();
    if (cand.is_zero()) continue;
    if (cand.lc() < 0) cand = -cand;
    UPoly q;
    if (upoly_try_divexact(A, cand, q) && upoly_try_divexact(B, cand, q)) return cand;
  }
  fail_analysis("modular gcd did not stabilize");
}

}  // namespace qrtkit
