#pragma once

#include <iosfwd>

namespace thcs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitDivergence = 2;

/// Entry point of the `thcs` tool. Reports and the final "status=..." line go
/// to `out`; usage text and diagnostics go to `err`.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thcs
