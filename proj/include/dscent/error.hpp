#pragma once

#include <stdexcept>
#include <string>

namespace dscent {

/// Error taxonomy shared by the library and the CLI.
/// The CLI maps these to exit codes: config=1, data=2, numeric=3.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

/// Invalid parameters or usage (bad beta, t < 1, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(std::string msg) : Error(std::move(msg), 1) {}
};

/// Bad input data: parse failures, empty input, out-of-range indices,
/// size caps exceeded.
class DataError : public Error {
public:
    explicit DataError(std::string msg) : Error(std::move(msg), 2) {}
};

/// Numerical failures: non-convergence, degenerate spectrum, parameter
/// regime where a closed form does not exist.
class NumericError : public Error {
public:
    explicit NumericError(std::string msg) : Error(std::move(msg), 3) {}
};

} // namespace dscent
