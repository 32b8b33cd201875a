#pragma once

#include <ostream>

namespace sid::cli {

// Exit status: 0 success, 2 invalid config, 3 horizon violation, 4 divergence or numerical
// failure, 1 anything else. Failures print one line "error kind=<kind> detail=<text>" to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int exit_code_for(const char* kind);

}  // namespace sid::cli
