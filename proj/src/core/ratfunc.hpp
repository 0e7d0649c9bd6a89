#pragma once
#include <map>
#include <optional>
#include <string>

#include "core/factor.hpp"
#include "core/mpoly.hpp"

namespace qrtkit {

// Quotient of polynomials, always kept reduced with the denominator integer
// primitive and positive in the leading coefficient. That makes structural
// equality semantic equality.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rat(1)) {}
  explicit RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
  explicit RatFunc(const MPoly& p) : num_(p), den_(Rat(1)) {}
  RatFunc(const MPoly& n, const MPoly& d);
  static RatFunc var(Sym s) { return RatFunc(MPoly::var(s)); }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat to_rat() const;  // requires is_constant
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc inverse() const;
  RatFunc pow(int k) const;

  RatFunc substitute_all(const std::map<Sym, RatFunc>& values) const;
  std::optional<Rat> try_eval(const std::map<Sym, Rat>& values) const;  // nullopt if den -> 0

  RatFunc derivative(Sym s) const;

  bool depends_on(Sym s) const { return num_.depends_on(s) || den_.depends_on(s); }
  std::vector<Sym> symbols() const;

  std::string str() const;

 private:
  MPoly num_, den_;
  void reduce();
};

// Evaluate a polynomial with rational-function values for (some) symbols.
RatFunc ratfunc_subst(const MPoly& p, const std::map<Sym, RatFunc>& values);

}  // namespace qrtkit
