#pragma once
#include <stdexcept>
#include <string>

namespace rgpe {

// Exit-status contract used by the CLI:
//   0 success, 1 verification failure, 2 validation error, 3 runtime numerical failure.
enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failure = 1,
    exit_validation_error = 2,
    exit_numerical_failure = 3,
};

// Bad arguments, bad config, violated preconditions.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Blow-up, NaN, lost contraction: the computation itself went wrong.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rgpe
