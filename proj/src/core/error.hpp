#pragma once
#include <stdexcept>
#include <string>

namespace qrtkit {

// Invalid: the input itself is malformed or outside the accepted class.
// Failed: input was well formed but the analysis cannot be completed.
enum class ErrCode { Invalid = 2, Failed = 3 };

struct Error : std::runtime_error {
  ErrCode code;
  Error(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] void fail_invalid(const std::string& msg);
[[noreturn]] void fail_analysis(const std::string& msg);

}  // namespace qrtkit
