#pragma once

namespace tripod {

/// Exit codes: 0 success, 2 invalid input, 3 numerical failure, 1 other runtime errors (e.g. I/O).
int run(int argc, char** argv);

}  // namespace tripod
