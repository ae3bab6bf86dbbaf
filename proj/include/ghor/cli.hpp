#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghor {

// Environment variable naming the default instance directory.
inline constexpr const char* kDataDirEnv = "GHOR_DATA_DIR";

// The `ghor` command line. Results go to out, diagnostics and usage text to
// err. Returns 0 iff no check failed; inconclusive verdicts do not fail.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghor
