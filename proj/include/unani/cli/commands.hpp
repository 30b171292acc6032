#pragma once

#include <ostream>

namespace unani::cli {

/// Entry point of the `unani` tool. Exit codes: 0 success, 1 domain error,
/// 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unani::cli
