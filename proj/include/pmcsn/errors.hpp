#pragma once

#include <stdexcept>
#include <string>

namespace pmcsn {

/// Invalid user configuration (bad flag value, model spec, grid).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem with input data: unreadable or malformed file, empty graph,
/// corrupted result file.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its configured guard.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmcsn
