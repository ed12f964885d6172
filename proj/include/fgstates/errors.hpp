#pragma once

#include <stdexcept>
#include <string>

namespace fgstates {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGenerator : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class SphereTooLarge : public Error {
 public:
  using Error::Error;
};

class DuplicateWord : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class LambdaOutOfRange : public Error {
 public:
  using Error::Error;
};

class PrefixTooShort : public Error {
 public:
  using Error::Error;
};

class TooDeep : public Error {
 public:
  using Error::Error;
};

class ZeroNotOnCircle : public Error {
 public:
  using Error::Error;
};

class NotAPolynomialZero : public Error {
 public:
  using Error::Error;
};

class WeightsNotConvex : public Error {
 public:
  using Error::Error;
};

}  // namespace fgstates
