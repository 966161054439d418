#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lipfree {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// f(0) != 0.
class NotAnchored : public Error {
 public:
  using Error::Error;
};

class PointNotInTable : public Error {
 public:
  using Error::Error;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class NotKernel : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class UnsupportedCodomainNorm : public Error {
 public:
  using Error::Error;
};

class IsometryViolation : public Error {
 public:
  using Error::Error;
};

class NotOneDimensional : public Error {
 public:
  using Error::Error;
};

// An exact-mode computation hit an operation with no rational result
// (sin/cos, native callbacks, an irrational Euclidean length).
class InexactOperation : public Error {
 public:
  using Error::Error;
};

// Malformed molecule / step-function / point-list input.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"
                   : what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lipfree
