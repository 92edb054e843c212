#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stixel {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, calibration or mismatched dimensions between inputs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain an operation accepts.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Tangent argument would reach the singularity at pi/2.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Point lies on or behind the camera plane.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Inverse grid calibration has no solution in the search interval.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Operands of a loss have different lengths or tensor shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value does not fit the fixed-width field of the wire format.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Prediction and annotation frame sets do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or payload. `offset` is the byte position for binary
/// inputs and npos when it does not apply.
class FormatError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit FormatError(const std::string& what, std::size_t offset = npos)
      : Error(offset == npos ? what
                             : what + " (at byte offset " +
                                   std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace stixel
