#pragma once

#include <stdexcept>
#include <string>

namespace rsdkpi {

// Input data violates a domain rule: malformed rows, negative hours,
// duplicate records, out-of-range metric arguments.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter is outside the range its owning module declares.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A file or stream could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rsdkpi
