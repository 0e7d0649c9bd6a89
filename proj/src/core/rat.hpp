#pragma once
#include <gmpxx.h>

#include <optional>
#include <string>

namespace qrtkit {

using Rat = mpq_class;

// Accepts "123", "-7/4", with optional surrounding whitespace.
Rat rat_parse(const std::string& text);

// n/d canonicalized. The mpq_class two-argument constructor does not reduce,
// so construct fractions through this.
Rat rat_frac(long n, long d);

std::string rat_str(const Rat& q);

bool rat_is_int(const Rat& q);

// Exact conversion when the value is an integer fitting a long.
std::optional<long> rat_to_long(const Rat& q);

// base^e with e possibly negative (base must be nonzero then).
Rat rat_pow(const Rat& base, long e);

}  // namespace qrtkit
