#pragma once

#include <stdexcept>
#include <string>

namespace sonarsim {

/// Bad parameters, invariant violations, malformed file contents.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem and stream failures (missing file, short read, ...).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sonarsim
