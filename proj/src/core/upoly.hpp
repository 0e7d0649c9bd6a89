#pragma once
#include <string>
#include <vector>

#include "core/rat.hpp"

namespace qrtkit {

// Dense univariate polynomial over the rationals.
// Invariant: coefficient vector is empty (zero polynomial) or ends nonzero.
struct UPoly {
  std::vector<Rat> c;  // c[i] is the coefficient of x^i

  static UPoly zero() { return {}; }
  static UPoly constant(const Rat& a);
  static UPoly x();
  static UPoly from_coeffs(std::vector<Rat> cs);

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  const Rat& coeff(int i) const;
  const Rat& lc() const;

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rat& a) const;
  bool operator==(const UPoly& o) const { return c == o.c; }

  UPoly shifted(int k) const;  // multiply by x^k
  UPoly pow(unsigned k) const;
  Rat eval(const Rat& v) const;
  UPoly derivative() const;
  UPoly monic() const;

  Rat content() const;      // positive; 0 for zero polynomial
  UPoly primitive() const;  // integer coefficients, gcd 1, sign preserved

  std::string str(const std::string& var = "x") const;
};

// Field division: a = q*b + r with deg r < deg b.
void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);

// True and sets q when b divides a exactly.
bool upoly_try_divexact(const UPoly& a, const UPoly& b, UPoly& q);

// Modular gcd (63-bit primes, CRT, division check). Result is integer
// primitive with positive leading coefficient; gcd(0,0) = 0.
UPoly upoly_gcd(const UPoly& a, const UPoly& b);

}  // namespace qrtkit
