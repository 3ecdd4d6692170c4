#pragma once

#include <stdexcept>
#include <string>

namespace qhc {

// Caller passed structurally invalid arguments (bad index, length mismatch).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Run configuration is inconsistent or out of the supported range.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data is unusable (parse failures, degenerate vectors, single-class sets).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qhc
