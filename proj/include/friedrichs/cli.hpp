// cli.hpp - the friedrichs command-line front end as a library call

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace friedrichs::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kNumericalError = 2;

// args[0] is the program name. Results go to `out` (or to files under --out-dir), diagnostics
// to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version() noexcept;

}  // namespace friedrichs::cli
