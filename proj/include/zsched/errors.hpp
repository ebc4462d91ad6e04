#pragma once

#include <stdexcept>
#include <string>

namespace zsched {

/// Invalid user-supplied parameters (workload files, run configs, CLI flags).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric routine failed to converge or produced a non-finite value.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally bad simulation input, e.g. an unsorted trace.
class TraceError : public std::runtime_error {
public:
    explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zsched
