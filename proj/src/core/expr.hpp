#pragma once
#include <set>
#include <string>

#include "core/ratfunc.hpp"

namespace qrtkit {

// Arithmetic expression grammar: rational literals, identifiers (including
// indexed forms like a[n], a[n+2], a[n-1]), + - * / ^ with integer exponents,
// parentheses, unary minus. '^' binds tightest and is right associative.
//
// When `allowed` is given, any identifier outside it is rejected.
RatFunc parse_expr(const std::string& text, const std::set<std::string>* allowed = nullptr);

// Same, but the result must be polynomial.
MPoly parse_poly(const std::string& text, const std::set<std::string>* allowed = nullptr);

// For indexed identifiers: family name and offset, e.g. "a[n+2]" -> ("a", 2).
bool split_indexed_name(const std::string& name, std::string& family, long& offset);
std::string indexed_name(const std::string& family, long offset);

}  // namespace qrtkit
