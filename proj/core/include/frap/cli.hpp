#pragma once

#include <string>
#include <vector>

namespace frap {

// Command-line entry point shared by the frap binary and the tests.  `args`
// excludes the program name.  Returns a process exit code; all diagnostics go
// to stderr, requested artifacts to the paths given by --out.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace frap
