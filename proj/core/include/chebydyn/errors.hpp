#pragma once

#include <stdexcept>
#include <string>

namespace chebydyn {

// Base class for every domain error raised by the library.
class DynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerator and denominator vanish together (unreduced common root).
class IndeterminateValue : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class PoleDerivative : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

// p(z) = z^2 + c with c == 0 has a double root; the conjugacy is undefined.
class DegenerateQuadratic : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class DerivativeVanishes : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class HalleyDenominatorVanishes : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class NotAFixedPoint : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class OutOfAntennaRange : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

class UnmappedTag : public DynamicsError {
 public:
  using DynamicsError::DynamicsError;
};

}  // namespace chebydyn
