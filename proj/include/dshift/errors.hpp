#pragma once

#include <stdexcept>
#include <string>

namespace dshift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// I(x,x) and every kernel except the scale truncation are undefined on the diagonal.
class EqualPointsError : public Error {
 public:
  EqualPointsError() : Error("points must be distinct") {}
};

// Precondition violations: negative points, empty windows, caps below the support.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ScaleMismatchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ZeroInputError : public Error {
 public:
  ZeroInputError() : Error("input function is identically zero") {}
};

}  // namespace dshift
