#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/rat.hpp"
#include "core/symbols.hpp"

namespace qrtkit {

// Monomial as a sorted sparse exponent vector; zero exponents never stored.
struct Mono {
  std::vector<std::pair<Sym, std::uint16_t>> e;

  int total_degree() const;
  std::uint16_t exp(Sym s) const;
  bool is_one() const { return e.empty(); }

  static Mono one() { return {}; }
  static Mono var(Sym s, std::uint16_t k = 1);

  Mono operator*(const Mono& o) const;
  bool divides(const Mono& o) const;  // this | o
  Mono quotient_of(const Mono& o) const;  // o / this, requires divides(o)
  bool operator==(const Mono& o) const { return e == o.e; }
};

// Graded lexicographic, descending, so map iteration starts at the leading term.
// Ties in total degree break lexicographically with lower symbol ids more
// significant.
struct MonoGrlexGreater {
  bool operator()(const Mono& a, const Mono& b) const;
};

class MPoly {
 public:
  using Terms = std::map<Mono, Rat, MonoGrlexGreater>;

  MPoly() = default;  // zero
  explicit MPoly(const Rat& c);
  explicit MPoly(long c) : MPoly(Rat(c)) {}
  static MPoly var(Sym s);
  static MPoly monomial(const Mono& m, const Rat& c);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  const Rat& constant_value() const;  // requires is_constant() && !is_zero(); zero handled too
  int total_degree() const;           // -1 for the zero polynomial
  int degree_in(Sym s) const;
  std::size_t term_count() const { return t_.size(); }
  const Terms& terms() const { return t_; }
  const Mono& leading_mono() const;
  const Rat& leading_coeff() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator*=(const MPoly& o);
  MPoly operator*(const Rat& c) const;
  bool operator==(const MPoly& o) const { return t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(t_ == o.t_); }

  MPoly pow(unsigned k) const;

  // Views as a univariate polynomial in s with MPoly coefficients.
  std::vector<MPoly> coeffs_in(Sym s) const;  // index = power of s; size degree_in(s)+1
  MPoly coeff_of(Sym s, int k) const;
  static MPoly from_coeffs_in(Sym s, const std::vector<MPoly>& cs);

  MPoly substitute(Sym s, const MPoly& value) const;
  MPoly substitute_all(const std::map<Sym, MPoly>& values) const;
  Rat eval_all(const std::map<Sym, Rat>& values) const;  // all present syms must be bound

  MPoly derivative(Sym s) const;

  // Positive rational c such that (*this)/c has coprime integer coefficients.
  Rat content() const;  // 0 for the zero polynomial
  MPoly primitive_part() const;

  std::vector<Sym> symbols() const;  // ascending ids
  bool depends_on(Sym s) const;

  std::string str() const;

  void add_term(const Mono& m, const Rat& c);

 private:
  Terms t_;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

}  // namespace qrtkit
