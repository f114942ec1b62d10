#pragma once

#include <stdexcept>
#include <string>

namespace cga {

/// Raised when a caller passes parameters outside an operation's domain
/// (n < 2, K <= 0, Cliff with n not divisible by 3, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised by the experiment layer when an output file cannot be written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cga
