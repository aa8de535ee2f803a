#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qcm {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record, field value, or operation input breaks a metadata invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Wire decoding failure. Carries the byte offset of the offending field
// relative to the start of the buffer being decoded, when known.
class CodecError : public Error {
 public:
  explicit CodecError(const std::string& what,
                      std::optional<std::size_t> offset = std::nullopt)
      : Error(offset ? what + " (offset " + std::to_string(*offset) + ")"
                     : what),
        offset_(offset) {}

  std::optional<std::size_t> offset() const { return offset_; }

 private:
  std::optional<std::size_t> offset_;
};

// Well-formed messages used in a way the protocol forbids (wrong direction,
// bad xid, broken segment chain, unknown device).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Scenario/configuration parse or validation failure.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Simulation kernel misuse: scheduling into the past, time regression.
class SimError : public Error {
 public:
  using Error::Error;
};

// File access problems (distinct from domain errors for CLI exit codes).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcm
