#pragma once

#include <iosfwd>

namespace cliffell::cli {

// Exit status: 0 success, 1 failed checks or pole errors, 2 usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cliffell::cli
