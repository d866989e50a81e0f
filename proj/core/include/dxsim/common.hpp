#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dxsim {

/// Simulation time in picoseconds.
using Tick = std::uint64_t;

using Addr = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class EncodeError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range array index, reported with the instruction and iteration.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Raised when an instruction is not executable with the operands it sees at
/// dispatch/issue time (dtype/op mismatch, size mismatch, too many iterations).
class DispatchError : public Error {
 public:
  using Error::Error;
};

class DeadlockError : public Error {
 public:
  using Error::Error;
};

/// Internal inconsistency in a hardware table. Indicates a simulator bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dxsim
