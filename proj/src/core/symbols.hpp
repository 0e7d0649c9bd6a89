#pragma once
#include <cstdint>
#include <string>

namespace qrtkit {

// Process-wide interned symbol id. Ids are assigned in interning order and
// never reused; monomial orderings compare ids, so expressions built in one
// process share a consistent variable order.
using Sym = std::uint32_t;

Sym sym_intern(const std::string& name);
const std::string& sym_name(Sym s);
bool sym_lookup(const std::string& name, Sym& out);
std::size_t sym_count();

}  // namespace qrtkit
