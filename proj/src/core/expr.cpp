#include "core/expr.hpp"

#include <cctype>
#include <climits>

#include "core/error.hpp"

namespace qrtkit {

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  explicit Lexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  char get() {
    char c = peek();
    if (pos < s.size()) ++pos;
    return c;
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string read_number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  }

  std::string read_name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string base = s.substr(start, pos - start);
    if (pos < s.size() && s[pos] == '[') {
      std::size_t close = s.find(']', pos);
      if (close == std::string::npos) fail_invalid("unterminated '[' in identifier");
      std::string idx = s.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      std::string flat;
      for (char c : idx)
        if (!std::isspace(static_cast<unsigned char>(c))) flat.push_back(c);
      if (flat.empty() || flat[0] != 'n')
        fail_invalid("index must have the form n, n+k or n-k: " + base + "[" + idx + "]");
      long off = 0;
      if (flat.size() > 1) {
        if ((flat[1] != '+' && flat[1] != '-') || flat.size() == 2)
          fail_invalid("index must have the form n, n+k or n-k: " + base + "[" + idx + "]");
        for (std::size_t i = 2; i < flat.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(flat[i])))
            fail_invalid("bad index offset in " + base + "[" + idx + "]");
        off = std::stol(flat.substr(2));
        if (flat[1] == '-') off = -off;
      }
      return indexed_name(base, off);
    }
    return base;
  }
};

struct Parser {
  Lexer lx;
  const std::set<std::string>* allowed;

  Parser(const std::string& text, const std::set<std::string>* allow)
      : lx(text), allowed(allow) {}

  RatFunc parse() {
    RatFunc r = expr();
    if (lx.peek() != '\0') fail_invalid("unexpected trailing input in expression");
    return r;
  }

  RatFunc expr() {
    RatFunc r = term();
    while (true) {
      char c = lx.peek();
      if (c == '+') {
        lx.get();
        r += term();
      } else if (c == '-') {
        lx.get();
        r -= term();
      } else {
        return r;
      }
    }
  }

  RatFunc term() {
    RatFunc r = unary();
    while (true) {
      char c = lx.peek();
      if (c == '*') {
        lx.get();
        r *= unary();
      } else if (c == '/') {
        lx.get();
        RatFunc d = unary();
        if (d.is_zero()) fail_invalid("division by zero in expression");
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc unary() {
    if (lx.peek() == '-') {
      lx.get();
      return -unary();
    }
    if (lx.peek() == '+') {
      lx.get();
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (lx.peek() == '^') {
      lx.get();
      long e = exponent();
      if (base.is_zero() && e < 0) fail_invalid("zero base with negative exponent");
      if (e < INT_MIN || e > INT_MAX) fail_invalid("exponent out of range");
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  long exponent() {
    bool paren = lx.eat('(');
    long sign = 1;
    if (lx.eat('-')) sign = -1;
    char c = lx.peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) fail_invalid("integer exponent expected");
    std::string digits = lx.read_number();
    if (digits.size() > 6) fail_invalid("exponent out of range");
    long e = sign * std::stol(digits);
    if (paren && !lx.eat(')')) fail_invalid("')' expected after exponent");
    return e;
  }

  RatFunc atom() {
    char c = lx.peek();
    if (c == '(') {
      lx.get();
      RatFunc r = expr();
      if (!lx.eat(')')) fail_invalid("')' expected");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = lx.read_number();
      return RatFunc(rat_parse(digits));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = lx.read_name();
      if (allowed && !allowed->count(name))
        fail_invalid("unknown symbol in expression: " + name);
      return RatFunc::var(sym_intern(name));
    }
    fail_invalid(std::string("unexpected character in expression: '") + c + "'");
  }
};

}  // namespace

RatFunc parse_expr(const std::string& text, const std::set<std::string>* allowed) {
  Parser p(text, allowed);
  return p.parse();
}

MPoly parse_poly(const std::string& text, const std::set<std::string>* allowed) {
  RatFunc f = parse_expr(text, allowed);
  if (!f.is_polynomial()) fail_invalid("polynomial expected: " + text);
  Rat d = f.den().constant_value();
  return f.num() * (1 / d);
}

bool split_indexed_name(const std::string& name, std::string& family, long& offset) {
  auto lb = name.find('[');
  if (lb == std::string::npos || name.back() != ']') return false;
  family = name.substr(0, lb);
  std::string idx = name.substr(lb + 1, name.size() - lb - 2);
  if (idx.empty() || idx[0] != 'n') return false;
  offset = 0;
  if (idx.size() > 1) {
    try {
      offset = std::stol(idx.substr(1));
    } catch (...) {
      return false;
    }
  }
  return true;
}

std::string indexed_name(const std::string& family, long offset) {
  if (offset == 0) return family + "[n]";
  if (offset > 0) return family + "[n+" + std::to_string(offset) + "]";
  return family + "[n" + std::to_string(offset) + "]";
}

}  // namespace qrtkit
