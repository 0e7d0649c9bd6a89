#include "core/symbols.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

#include "core/error.hpp"

namespace qrtkit {

namespace {
// deque: references handed out by sym_name stay valid as the table grows
struct Registry {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, Sym> ids;
};
Registry& reg() {
  static Registry r;
  return r;
}
}  // namespace

Sym sym_intern(const std::string& name) {
  if (name.empty()) fail_invalid("empty symbol name");
  auto& r = reg();
  std::lock_guard lock(r.mu);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) return it->second;
  Sym id = static_cast<Sym>(r.names.size());
  r.names.push_back(name);
  r.ids.emplace(name, id);
  return id;
}

const std::string& sym_name(Sym s) {
  auto& r = reg();
  std::lock_guard lock(r.mu);
  if (s >= r.names.size()) fail_invalid("unknown symbol id");
  return r.names[s];
}

bool sym_lookup(const std::string& name, Sym& out) {
  auto& r = reg();
  std::lock_guard lock(r.mu);
  auto it = r.ids.find(name);
  if (it == r.ids.end()) return false;
  out = it->second;
  return true;
}

std::size_t sym_count() {
  auto& r = reg();
  std::lock_guard lock(r.mu);
  return r.names.size();
}

}  // namespace qrtkit
