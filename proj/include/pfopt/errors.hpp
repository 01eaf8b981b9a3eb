#pragma once

#include <stdexcept>
#include <string>

namespace pfopt {

// Root-finder or update produced something unusable (iteration cap, NaN).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (bad LIBSVM line, unmappable labels, bad manifest).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfopt
