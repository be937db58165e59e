#pragma once

#include <iosfwd>

namespace loewner::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericFailure = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli
