#pragma once

#include <iostream>
#include <stdexcept>
#include <string>

namespace crossrec {

// Bad flags, inconsistent options, out-of-range parameters. CLI exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed inputs, empty datasets. CLI exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

}  // namespace crossrec
