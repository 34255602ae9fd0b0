#pragma once
#include <iosfwd>

namespace ldpgc {

// Entry point behind the `ldpgc` binary; split out so tests can drive it
// in-process. Returns the process exit code (0 ok, 2 usage, 3 size guard,
// 4 I/O).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldpgc
