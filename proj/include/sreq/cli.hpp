#pragma once

#include <ostream>

namespace sreq {

/// Exit codes: 0 success or all proved, 1 verification failure, 2 usage or
/// semantic error, 3 I/O error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sreq
