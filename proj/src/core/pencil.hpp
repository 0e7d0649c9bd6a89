#pragma once
#include <optional>
#include <string>
#include <vector>

#include "core/ratfunc.hpp"

namespace qrtkit {

// Pencil of biquadratic curves on P1 x P1, presented through its conserved
// quantity K(u,v) = num/den (+ kappa). u is the older iterate, v the newer
// one; for asymmetric pairs u carries X and v carries Y. num/den is reduced,
// bidegrees are at most (2,2), and num, den are not proportional.
struct QRTInvariant {
  MPoly num, den;
  Sym u = 0, v = 0;
  bool symmetric = false;
  std::optional<RatFunc> kappa;
};

QRTInvariant make_invariant(const RatFunc& K, Sym u, Sym v);

// Member num - K*den of the pencil; K may involve parameters. The fibre at
// K = infinity is the denominator itself (pencil_member_inf).
MPoly pencil_member(const QRTInvariant& inv, const RatFunc& K);
MPoly pencil_member_inf(const QRTInvariant& inv);

// Factorization of a curve equation in the (u,v) plane over the parameter
// field: parameter-only content times primitive factors with multiplicities.
// Factors are normalized (integer primitive, positive leading coefficient)
// and pairwise non-associate.
struct CurveFactor {
  MPoly poly;
  int mult;
};
struct CurveFactorization {
  MPoly content;
  std::vector<CurveFactor> factors;
};
CurveFactorization factor_uv_poly(const MPoly& p, Sym u, Sym v);

// Factors of p viewed in the single variable x over the field generated by
// the remaining symbols. complete=false flags an unsplit factor of degree
// >= 3 in x whose roots were not extracted.
struct VarFactor {
  MPoly poly;
  int mult;
};
std::vector<VarFactor> factor_in_var(const MPoly& p, Sym x, bool* complete = nullptr);

// Roots of p in x over rational functions of the remaining symbols. Roots of
// quadratic factors are extracted when the discriminant is a perfect square.
struct VarRoot {
  RatFunc value;
  int mult;
};
struct VarRoots {
  std::vector<VarRoot> roots;
  bool complete = true;
};
VarRoots roots_in_var(const MPoly& p, Sym x);

// Coefficients a, b over the parameter field with p = a*q + b*r, if any.
// Coordinates are the (u,v) monomials; everything else counts as parameter.
std::optional<std::pair<RatFunc, RatFunc>> in_span(const MPoly& p, const MPoly& q,
                                                   const MPoly& r, Sym u, Sym v);

// Whether two invariants span the same pencil, i.e. agree up to a Moebius
// change of the K coordinate. Both must use the same variable pair.
bool same_pencil(const QRTInvariant& a, const QRTInvariant& b);

std::string invariant_str(const QRTInvariant& inv);

}  // namespace qrtkit
