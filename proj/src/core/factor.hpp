#pragma once
#include <optional>
#include <vector>

#include "core/mpoly.hpp"
#include "core/upoly.hpp"

namespace qrtkit {

// ---- univariate over Q ----

struct UFactor {
  UPoly f;  // integer primitive, positive leading coefficient, degree >= 1
  int mult;
};

// f = unit * prod factors[i]^mult[i].  complete=false marks a factorization
// whose listed factors of degree >= 5 may still be reducible; everything the
// supported methods handle (rational roots, cyclotomics up to order 64,
// quadratic and quartic splits) is pulled out first.
struct UFactorization {
  Rat unit;
  std::vector<UFactor> factors;
  bool complete = true;
};

UFactorization factor_univariate(const UPoly& f);

std::vector<Rat> rational_roots(const UPoly& f);  // distinct roots

UPoly cyclotomic(unsigned m);  // m >= 1

// If m-th cyclotomic equals f (integer primitive, positive lc), report m.
std::optional<unsigned> cyclotomic_order(const UPoly& f, unsigned max_m = 64);

bool rat_sqrt(const Rat& q, Rat& out);  // exact square root when q is one

// ---- multivariate ----

MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

bool mpoly_try_divexact(const MPoly& a, const MPoly& b, MPoly& q);
MPoly mpoly_divexact(const MPoly& a, const MPoly& b);

// Divide by rational content, make the graded-lex leading coefficient
// positive. Shared canonical form for gcd results and normalized factors.
MPoly mpoly_normalize(const MPoly& p);

// Content of p as a polynomial in x (gcd of the x-coefficients).
MPoly mpoly_content_in(Sym x, const MPoly& p);

MPoly resultant_in(Sym x, const MPoly& f, const MPoly& g);
MPoly discriminant_in(Sym x, const MPoly& f);

std::optional<MPoly> mpoly_sqrt(const MPoly& f);

// Conversions; the MPoly side must involve no symbol other than x.
UPoly upoly_from_mpoly(const MPoly& p, Sym x);
MPoly mpoly_from_upoly(const UPoly& p, Sym x);

}  // namespace qrtkit
