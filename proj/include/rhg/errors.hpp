#pragma once

#include <stdexcept>
#include <string>

namespace rhg {

/// Raised when a model or generator parameter lies outside its domain.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a request cannot be satisfied for otherwise valid parameters
/// (no radius attains the requested degree, too many long-range edges, ...).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

class OutOfBoundsError : public std::out_of_range {
public:
    explicit OutOfBoundsError(const std::string& what) : std::out_of_range(what) {}
};

class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rhg
