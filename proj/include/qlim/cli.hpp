#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlim::cli {

// Entry point behind the binary, in library form so tests can drive it.
// args excludes the program name. Returns 0 on success, 2 on usage errors,
// 1 on numerical failure (diagnostics as JSON on err).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlim::cli
