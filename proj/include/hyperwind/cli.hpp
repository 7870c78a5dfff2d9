#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperwind::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAbort = 3;

/// Entry point of the `hyperwind` tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperwind::cli
