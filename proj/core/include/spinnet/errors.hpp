// Copyright 2026 The spinnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace spinnet {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad sizes, self-loops, unknown labels, wrong terminal count.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on a numeric argument was violated
/// (non-Hermitian matrix, non-normalized state, dimension mismatch).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The eigensolver did not converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but the requested physics is infeasible.
/// The CLI maps everything below this class to exit code 3.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotAnEigenvalueError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotResonantError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// A terminal field sits within the detuning floor of a network eigenvalue.
class ResonantCollisionError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// No eigenmode links the two terminals (or the effective coupling vanishes).
class NoChannelError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class CalibrationError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotCalibratedError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class PlanningError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace spinnet
