#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adaptmhd {

// Base of every error thrown by the library. The CLI maps subclasses onto
// stable exit codes (see tools/adaptmhd.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class KindError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, double min_value)
      : Error(what), min_value_(min_value) {}
  double min_value() const { return min_value_; }

 private:
  double min_value_;
};

// Raised when a pointwise 3x3 system is (numerically) singular.
class SingularPointError : public Error {
 public:
  SingularPointError(const std::string& what, std::size_t node, double det)
      : Error(what + " (node " + std::to_string(node) +
              ", det " + std::to_string(det) + ")"),
        node_(node),
        det_(det) {}
  std::size_t node() const { return node_; }
  double determinant() const { return det_; }

 private:
  std::size_t node_;
  double det_;
};

class FrameDegeneracyError : public Error {
 public:
  FrameDegeneracyError(const std::string& what, std::size_t node, double value)
      : Error(what + " (node " + std::to_string(node) +
              ", value " + std::to_string(value) + ")"),
        node_(node),
        value_(value) {}
  std::size_t node() const { return node_; }
  double value() const { return value_; }

 private:
  std::size_t node_;
  double value_;
};

class AllMaskedError : public Error {
 public:
  using Error::Error;
};

class NotLevelError : public Error {
 public:
  using Error::Error;
};

class CriticalError : public Error {
 public:
  using Error::Error;
};

class TangencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace adaptmhd
