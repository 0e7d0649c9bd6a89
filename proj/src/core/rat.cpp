#include "core/rat.hpp"

#include "core/error.hpp"

namespace qrtkit {

Rat rat_parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail_invalid("empty rational literal");
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    fail_invalid("bad rational literal: " + text);
  if (q.get_den() == 0) fail_invalid("zero denominator in literal: " + text);
  q.canonicalize();
  return q;
}

Rat rat_frac(long n, long d) {
  if (d == 0) fail_invalid("zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

bool rat_is_int(const Rat& q) { return q.get_den() == 1; }

std::optional<long> rat_to_long(const Rat& q) {
  if (!rat_is_int(q) || !q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) fail_analysis("0 raised to a negative power");
    return Rat(0);
  }
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), k);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), k);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

}  // namespace qrtkit
