#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stegvault {

// Base of every error the library throws. Each subclass corresponds to one
// failure class that callers (the CLI in particular) map to an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally malformed input: bad magic, truncation, inconsistent lengths.
class FormatError : public Error {
 public:
  using Error::Error;
};

// An archive entry path that would escape the destination directory.
class UnsafePathError : public FormatError {
 public:
  using FormatError::FormatError;
};

// Checksum or padding mismatch after decoding well-formed data.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCoverError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  CapacityError(std::uint64_t need, std::uint64_t have)
      : Error("payload needs " + std::to_string(need) + " bytes but cover holds " +
              std::to_string(have) + " bytes"),
        need_(need),
        have_(have) {}

  std::uint64_t need() const noexcept { return need_; }
  std::uint64_t have() const noexcept { return have_; }

 private:
  std::uint64_t need_;
  std::uint64_t have_;
};

// Caller passed parameters outside the operation's contract.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// RSA unwrap produced an invalid padding frame (wrong or corrupted key).
class KeyError : public Error {
 public:
  using Error::Error;
};

// The object carries no valid stego header.
class NotStegoError : public Error {
 public:
  using Error::Error;
};

// A cover/stego comparison found a change the embedding rules forbid.
class AuditError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stegvault
