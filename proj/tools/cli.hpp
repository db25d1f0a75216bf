#pragma once

#include <iosfwd>

namespace sqcavity::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalError = 3;
inline constexpr int kIoError = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqcavity::cli
