#include "core/error.hpp"

namespace qrtkit {

void fail_invalid(const std::string& msg) { throw Error(ErrCode::Invalid, msg); }
void fail_analysis(const std::string& msg) { throw Error(ErrCode::Failed, msg); }

}  // namespace qrtkit
