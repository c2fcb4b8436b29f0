#pragma once

#include <stdexcept>
#include <string>

namespace friendnet {

/// Invalid specification, configuration, or argument. CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A mean-field solver was asked for something outside its supported regime.
class MeanFieldError : public std::runtime_error {
public:
    explicit MeanFieldError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem or serialization failure. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace friendnet
