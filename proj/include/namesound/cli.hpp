#pragma once

#include <iosfwd>

#include "namesound/error.hpp"

namespace namesound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitBackend = 3;

int exit_code_for(ErrorKind kind) noexcept;

/// Entry point for the `namesound` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace namesound::cli
