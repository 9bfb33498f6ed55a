#pragma once

#include <stdexcept>
#include <string>

namespace tiltspdc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad scenario keys, missing units, invalid parameter values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The physics has no answer for these inputs: no phase matching, degenerate
// tilt solver, evanescent diffraction order, wavelength outside Sellmeier data.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class RangeError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

// A numerical guard tripped: grid too coarse, delay window too narrow,
// root-finder postcondition not met.
class NumericalGuardError : public Error {
 public:
  using Error::Error;
};

inline int exit_code(const Error& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  if (dynamic_cast<const PhysicsError*>(&e)) return 3;
  if (dynamic_cast<const NumericalGuardError*>(&e)) return 4;
  return 1;
}

}  // namespace tiltspdc
