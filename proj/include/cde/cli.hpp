#pragma once

#include <iosfwd>

namespace cde::cli {

/// Runs one command-line invocation. Returns 0 on success, 1 on invalid
/// input or failed verification, 2 on internal failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cde::cli
