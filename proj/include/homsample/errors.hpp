#pragma once

#include <stdexcept>
#include <string>

namespace homsample {

// Bad input, bad parameters or unmet preconditions. The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure or failed chain initialization. The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homsample
