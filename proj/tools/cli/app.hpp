#pragma once

#include <iosfwd>

namespace pfqed::cli {

/// Full command-line entry point. Tables go to --out (or `out`), the summary
/// and diagnostics to `err`. Returns 0 on success, 1 on a numerical failure
/// and 2 on a usage or configuration error.
int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

} // namespace pfqed::cli
