#pragma once
#include <map>
#include <string>
#include <vector>

#include "core/ratfunc.hpp"

namespace qrtkit {

// One step-indexed coefficient sequence a[n], a[n+1], ...
//   Secular:  value(j) = tau + j*alpha, tau and alpha free symbols
//   Periodic: value(j) = cycle[j mod cycle.size()]
//   Formal:   value(j) is the interned symbol base[n+j] itself
//   Table:    explicit values; querying a missing index fails
struct SeqSpec {
  enum Kind { Secular, Periodic, Formal, Table };
  Kind kind = Formal;
  Sym tau = 0, alpha = 0;
  std::vector<RatFunc> cycle;
  std::string base;
  std::map<long, RatFunc> table;

  RatFunc value(long j) const;

  static SeqSpec secular();
  static SeqSpec periodic(std::vector<RatFunc> cycle);
  static SeqSpec formal(const std::string& base);
  static SeqSpec explicit_table(std::map<long, RatFunc> table);
};

// Sequence specs keyed by family name. A map whose update rules mention a[n-1],
// a[n], a[n+2], ... is stepped by binding those symbols per step through this.
struct ParamModel {
  std::map<std::string, SeqSpec> seqs;

  bool empty() const { return seqs.empty(); }

  // Substitution binding each given indexed symbol base[n+k] to the value of
  // its sequence at j+k. Symbols whose family has no spec are an error: a map
  // must not be iterated with unbound sequence coefficients.
  std::map<Sym, RatFunc> at_step(long j, const std::vector<Sym>& indexed) const;
};

// Indexed symbols (names of the form base[n+k]) occurring in p, ascending ids.
std::vector<Sym> indexed_symbols(const MPoly& p);
std::vector<Sym> indexed_symbols(const RatFunc& f);

// Every base[n+k] replaced by base[n+k+d]; other symbols untouched.
RatFunc shift_indexed(const RatFunc& f, long d);

}  // namespace qrtkit
