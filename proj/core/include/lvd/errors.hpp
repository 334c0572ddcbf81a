#pragma once

#include <stdexcept>
#include <string>

namespace lvd {

/// Invalid or inconsistent input data: bad file contents, dimension
/// mismatches, violated value-range contracts.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: non-finite losses or gradients, degenerate
/// denominators.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lvd
