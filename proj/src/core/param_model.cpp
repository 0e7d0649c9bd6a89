#include "core/param_model.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/expr.hpp"

namespace qrtkit {

RatFunc SeqSpec::value(long j) const {
  switch (kind) {
    case Secular:
      return RatFunc::var(tau) + RatFunc(Rat(j)) * RatFunc::var(alpha);
    case Periodic: {
      long m = static_cast<long>(cycle.size());
      long r = ((j % m) + m) % m;
      return cycle[static_cast<std::size_t>(r)];
    }
    case Formal:
      return RatFunc::var(sym_intern(indexed_name(base, j)));
    case Table: {
      auto it = table.find(j);
      if (it == table.end()) fail_invalid("coefficient sequence has no value at index " + std::to_string(j));
      return it->second;
    }
  }
  fail_invalid("corrupt sequence spec");
}

SeqSpec SeqSpec::secular() {
  SeqSpec s;
  s.kind = Secular;
  s.tau = sym_intern("tau");
  s.alpha = sym_intern("alpha");
  return s;
}

SeqSpec SeqSpec::periodic(std::vector<RatFunc> cycle) {
  if (cycle.empty()) fail_invalid("periodic sequence needs at least one value");
  SeqSpec s;
  s.kind = Periodic;
  s.cycle = std::move(cycle);
  return s;
}

SeqSpec SeqSpec::formal(const std::string& base) {
  SeqSpec s;
  s.kind = Formal;
  s.base = base;
  return s;
}

SeqSpec SeqSpec::explicit_table(std::map<long, RatFunc> table) {
  SeqSpec s;
  s.kind = Table;
  s.table = std::move(table);
  return s;
}

std::map<Sym, RatFunc> ParamModel::at_step(long j, const std::vector<Sym>& indexed) const {
  std::map<Sym, RatFunc> out;
  for (Sym s : indexed) {
    std::string family;
    long offset = 0;
    if (!split_indexed_name(sym_name(s), family, offset)) continue;
    auto it = seqs.find(family);
    if (it == seqs.end()) fail_invalid("no sequence spec for coefficient family " + family);
    out[s] = it->second.value(j + offset);
  }
  return out;
}

std::vector<Sym> indexed_symbols(const MPoly& p) {
  std::vector<Sym> out;
  std::string family;
  long offset = 0;
  for (Sym s : p.symbols())
    if (split_indexed_name(sym_name(s), family, offset)) out.push_back(s);
  return out;
}

std::vector<Sym> indexed_symbols(const RatFunc& f) {
  std::vector<Sym> out = indexed_symbols(f.num());
  std::string family;
  long offset = 0;
  for (Sym s : f.den().symbols())
    if (split_indexed_name(sym_name(s), family, offset) &&
        std::find(out.begin(), out.end(), s) == out.end())
      out.push_back(s);
  return out;
}

RatFunc shift_indexed(const RatFunc& f, long d) {
  if (d == 0) return f;
  std::map<Sym, RatFunc> sub;
  std::string family;
  long offset = 0;
  for (Sym s : indexed_symbols(f))
    if (split_indexed_name(sym_name(s), family, offset))
      sub[s] = RatFunc::var(sym_intern(indexed_name(family, offset + d)));
  return sub.empty() ? f : f.substitute_all(sub);
}

}  // namespace qrtkit
