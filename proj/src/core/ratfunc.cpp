#include "core/ratfunc.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace qrtkit {

RatFunc::RatFunc(const MPoly& n, const MPoly& d) : num_(n), den_(d) {
  if (den_.is_zero()) fail_invalid("zero denominator in rational function");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = MPoly(Rat(1));
    return;
  }
  MPoly g = mpoly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = mpoly_divexact(num_, g);
    den_ = mpoly_divexact(den_, g);
  }
  MPoly nd = mpoly_normalize(den_);
  // scalar relating den_ to its normalized form rescales the numerator
  Rat scale = den_.leading_coeff() / nd.leading_coeff();
  den_ = nd;
  num_ = num_ * (1 / scale);
}

Rat RatFunc::to_rat() const {
  if (!is_constant()) fail_invalid("to_rat on non-constant rational function");
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) fail_analysis("division by zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail_analysis("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int k) const {
  if (k == 0) return RatFunc(Rat(1));
  if (k < 0) return inverse().pow(-k);
  RatFunc r(Rat(1));
  RatFunc b = *this;
  unsigned e = static_cast<unsigned>(k);
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

RatFunc ratfunc_subst(const MPoly& p, const std::map<Sym, RatFunc>& values) {
  RatFunc r;
  std::map<Sym, std::vector<RatFunc>> powers;
  for (auto& [m, c] : p.terms()) {
    RatFunc term{c};
    for (auto& [s, k] : m.e) {
      auto vit = values.find(s);
      if (vit == values.end()) {
        term *= RatFunc(MPoly::monomial(Mono::var(s, k), Rat(1)));
        continue;
      }
      auto& pw = powers[s];
      if (pw.empty()) pw.push_back(RatFunc(Rat(1)));
      while (pw.size() <= k) pw.push_back(pw.back() * vit->second);
      term *= pw[k];
    }
    r += term;
  }
  return r;
}

RatFunc RatFunc::substitute_all(const std::map<Sym, RatFunc>& values) const {
  RatFunc n = ratfunc_subst(num_, values);
  RatFunc d = ratfunc_subst(den_, values);
  if (d.is_zero()) fail_analysis("substitution lands on a pole");
  return n / d;
}

std::optional<Rat> RatFunc::try_eval(const std::map<Sym, Rat>& values) const {
  Rat d = den_.eval_all(values);
  if (d == 0) return std::nullopt;
  return num_.eval_all(values) / d;
}

RatFunc RatFunc::derivative(Sym s) const {
  return RatFunc(num_.derivative(s) * den_ - num_ * den_.derivative(s), den_ * den_);
}

std::vector<Sym> RatFunc::symbols() const {
  auto a = num_.symbols(), b = den_.symbols();
  std::vector<Sym> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string RatFunc::str() const {
  if (den_ == MPoly(Rat(1))) return num_.str();
  std::string n = num_.str();
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.str();
  if (den_.term_count() > 1 || !den_.is_constant()) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace qrtkit
