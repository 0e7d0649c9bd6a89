#include "core/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "core/error.hpp"

namespace qrtkit {

int Mono::total_degree() const {
  int d = 0;
  for (auto& [s, k] : e) d += k;
  return d;
}

std::uint16_t Mono::exp(Sym s) const {
  for (auto& [t, k] : e)
    if (t == s) return k;
  return 0;
}

Mono Mono::var(Sym s, std::uint16_t k) {
  Mono m;
  if (k) m.e.emplace_back(s, k);
  return m;
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  r.e.reserve(e.size() + o.e.size());
  std::size_t i = 0, j = 0;
  while (i < e.size() && j < o.e.size()) {
    if (e[i].first == o.e[j].first) {
      unsigned sum = unsigned(e[i].second) + unsigned(o.e[j].second);
      if (sum > 0xffff) fail_analysis("monomial exponent overflow");
      r.e.emplace_back(e[i].first, static_cast<std::uint16_t>(sum));
      ++i, ++j;
    } else if (e[i].first < o.e[j].first) {
      r.e.push_back(e[i++]);
    } else {
      r.e.push_back(o.e[j++]);
    }
  }
  for (; i < e.size(); ++i) r.e.push_back(e[i]);
  for (; j < o.e.size(); ++j) r.e.push_back(o.e[j]);
  return r;
}

bool Mono::divides(const Mono& o) const {
  std::size_t j = 0;
  for (auto& [s, k] : e) {
    while (j < o.e.size() && o.e[j].first < s) ++j;
    if (j == o.e.size() || o.e[j].first != s || o.e[j].second < k) return false;
  }
  return true;
}

Mono Mono::quotient_of(const Mono& o) const {
  Mono r;
  std::size_t i = 0;
  for (auto& [s, k] : o.e) {
    std::uint16_t sub = 0;
    while (i < e.size() && e[i].first < s) ++i;
    if (i < e.size() && e[i].first == s) sub = e[i].second;
    if (sub > k) fail_analysis("monomial quotient is not a monomial");
    if (k - sub) r.e.emplace_back(s, static_cast<std::uint16_t>(k - sub));
  }
  return r;
}

bool MonoGrlexGreater::operator()(const Mono& a, const Mono& b) const {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  std::size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first == b.e[j].first) {
      if (a.e[i].second != b.e[j].second) return a.e[i].second > b.e[j].second;
      ++i, ++j;
    } else {
      // whichever has a positive exponent on the earlier variable is greater
      return a.e[i].first < b.e[j].first;
    }
  }
  return i < a.e.size();
}

MPoly::MPoly(const Rat& c) {
  if (c != 0) t_.emplace(Mono::one(), c);
}

MPoly MPoly::var(Sym s) {
  MPoly p;
  p.t_.emplace(Mono::var(s), Rat(1));
  return p;
}

MPoly MPoly::monomial(const Mono& m, const Rat& c) {
  MPoly p;
  if (c != 0) p.t_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

const Rat& MPoly::constant_value() const {
  static const Rat zero(0);
  if (t_.empty()) return zero;
  if (!is_constant()) fail_invalid("constant_value on non-constant polynomial");
  return t_.begin()->second;
}

int MPoly::total_degree() const {
  return t_.empty() ? -1 : t_.begin()->first.total_degree();
}

int MPoly::degree_in(Sym s) const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, int(m.exp(s)));
  if (d == -1 && !t_.empty()) d = 0;
  return d;
}

const Mono& MPoly::leading_mono() const {
  if (t_.empty()) fail_invalid("leading term of zero polynomial");
  return t_.begin()->first;
}

const Rat& MPoly::leading_coeff() const {
  if (t_.empty()) fail_invalid("leading term of zero polynomial");
  return t_.begin()->second;
}

void MPoly::add_term(const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  r += o;
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  r -= o;
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  for (auto& [m1, c1] : t_)
    for (auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly MPoly::operator*(const Rat& c) const {
  if (c == 0) return MPoly();
  MPoly r = *this;
  for (auto& [m, v] : r.t_) v *= c;
  return r;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly r(Rat(1));
  MPoly base = *this;
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

std::vector<MPoly> MPoly::coeffs_in(Sym s) const {
  int d = degree_in(s);
  std::vector<MPoly> cs(static_cast<std::size_t>(std::max(d, 0)) + 1);
  if (t_.empty()) return {};
  for (auto& [m, c] : t_) {
    std::uint16_t k = m.exp(s);
    Mono rest;
    for (auto& p : m.e)
      if (p.first != s) rest.e.push_back(p);
    cs[k].add_term(rest, c);
  }
  return cs;
}

MPoly MPoly::coeff_of(Sym s, int k) const {
  MPoly r;
  if (k < 0) return r;
  for (auto& [m, c] : t_) {
    if (int(m.exp(s)) != k) continue;
    Mono rest;
    for (auto& p : m.e)
      if (p.first != s) rest.e.push_back(p);
    r.add_term(rest, c);
  }
  return r;
}

MPoly MPoly::from_coeffs_in(Sym s, const std::vector<MPoly>& cs) {
  MPoly r;
  MPoly x = MPoly::var(s);
  for (std::size_t k = 0; k < cs.size(); ++k) r += cs[k] * x.pow(static_cast<unsigned>(k));
  return r;
}

MPoly MPoly::substitute(Sym s, const MPoly& value) const {
  if (!depends_on(s)) return *this;
  auto cs = coeffs_in(s);
  // Horner
  MPoly r;
  for (std::size_t k = cs.size(); k-- > 0;) r = r * value + cs[k];
  return r;
}

MPoly MPoly::substitute_all(const std::map<Sym, MPoly>& values) const {
  // single pass per monomial so substituted values are never re-substituted
  MPoly r;
  std::map<Sym, std::vector<MPoly>> powers;  // powers[s][k] = values[s]^k
  for (auto& [m, c] : t_) {
    MPoly term(c);
    for (auto& [s, k] : m.e) {
      auto vit = values.find(s);
      if (vit == values.end()) {
        term *= MPoly::monomial(Mono::var(s, k), Rat(1));
        continue;
      }
      auto& pw = powers[s];
      if (pw.empty()) pw.push_back(MPoly(Rat(1)));
      while (pw.size() <= k) pw.push_back(pw.back() * vit->second);
      term *= pw[k];
    }
    r += term;
  }
  return r;
}

Rat MPoly::eval_all(const std::map<Sym, Rat>& values) const {
  Rat r(0);
  for (auto& [m, c] : t_) {
    Rat term = c;
    for (auto& [s, k] : m.e) {
      auto vit = values.find(s);
      if (vit == values.end()) fail_invalid("eval_all: unbound symbol " + sym_name(s));
      term *= rat_pow(vit->second, k);
    }
    r += term;
  }
  return r;
}

MPoly MPoly::derivative(Sym s) const {
  MPoly r;
  for (auto& [m, c] : t_) {
    std::uint16_t k = m.exp(s);
    if (!k) continue;
    Mono dm;
    for (auto& p : m.e) {
      if (p.first == s) {
        if (k > 1) dm.e.emplace_back(s, static_cast<std::uint16_t>(k - 1));
      } else {
        dm.e.push_back(p);
      }
    }
    r.add_term(dm, c * k);
  }
  return r;
}

Rat MPoly::content() const {
  if (t_.empty()) return Rat(0);
  mpz_class g(0), l(1);
  for (auto& [m, c] : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat r(g, l);
  r.canonicalize();
  return r;
}

MPoly MPoly::primitive_part() const {
  if (t_.empty()) return *this;
  Rat c = content();
  MPoly r = *this;
  for (auto& [m, v] : r.t_) v /= c;
  return r;
}

std::vector<Sym> MPoly::symbols() const {
  std::vector<Sym> out;
  for (auto& [m, c] : t_)
    for (auto& [s, k] : m.e)
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

bool MPoly::depends_on(Sym s) const {
  for (auto& [m, c] : t_)
    if (m.exp(s)) return true;
  return false;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : t_) {
    Rat a = c > 0 ? Rat(c) : Rat(-c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool coeff_shown = (a != 1) || m.is_one();
    if (coeff_shown) os << rat_str(a);
    bool started = coeff_shown;
    for (auto& [s, k] : m.e) {
      if (started) os << "*";
      os << sym_name(s);
      if (k > 1) os << "^" << k;
      started = true;
    }
  }
  return os.str();
}

}  // namespace qrtkit
