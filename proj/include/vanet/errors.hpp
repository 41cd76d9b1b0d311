#pragma once

#include <stdexcept>
#include <string>

namespace vanet {

/// Rejected input: bad configuration, violated invariant, out-of-range
/// argument. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure (unreadable config, unwritable output). Maps to CLI
/// exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vanet
