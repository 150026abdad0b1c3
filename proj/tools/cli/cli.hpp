#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace concentro::cli {

/// Runs one `concentro` invocation. args excludes the program name.
/// Returns 0 on success, 2 on usage or validation errors, 1 otherwise.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, const char* const* argv);

}  // namespace concentro::cli
