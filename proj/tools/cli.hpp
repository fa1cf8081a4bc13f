#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace percolab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

// Runs one subcommand. `args` excludes the program name. The table goes to
// --out when given, else to `out`; the summary line and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace percolab
