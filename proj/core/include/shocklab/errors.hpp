#pragma once

#include <stdexcept>
#include <string>

namespace shocklab {

// Every failure raised by the library derives from Error, so callers that only
// need "did it work" can catch one type; the subclasses name the error class.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// sigma' <= 0 somewhere the solver or a speed formula needed it positive.
class HyperbolicityLoss : public Error {
  public:
    using Error::Error;
};

// Stress outside the range of the constitutive law (e.g. sigma <= -1 for exp).
class OutOfRange : public Error {
  public:
    using Error::Error;
};

class BracketFailure : public Error {
  public:
    using Error::Error;
};

class QuadratureError : public Error {
  public:
    using Error::Error;
};

class DegenerateShock : public Error {
  public:
    using Error::Error;
};

class NonPhysicalJump : public Error {
  public:
    using Error::Error;
};

class CflViolation : public Error {
  public:
    using Error::Error;
};

class NonFiniteState : public Error {
  public:
    using Error::Error;
};

class InsufficientSamples : public Error {
  public:
    using Error::Error;
};

class ProbeMismatch : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace shocklab
