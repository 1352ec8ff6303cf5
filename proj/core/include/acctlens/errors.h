#ifndef ACCTLENS_ERRORS_H_
#define ACCTLENS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace acctlens {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tick count too large for the 16-bit compressed encoding.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A record whose bytes cannot be a valid accounting record.
class MalformedRecord : public Error {
 public:
  using Error::Error;
};

// No record layout / byte order passes the sanity checks.
class UnknownFormat : public Error {
 public:
  using Error::Error;
};

// File length is not a whole number of 32-byte units.
class TruncatedFile : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A record field that does not fit the on-disk layout.
class FieldRangeError : public Error {
 public:
  FieldRangeError(std::string field, const std::string& detail)
      : Error("field '" + field + "' out of range: " + detail),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class DuplicateName : public Error {
 public:
  using Error::Error;
};

class NoReportsRegistered : public Error {
 public:
  using Error::Error;
};

// The run context was used after its single pass already happened.
class RunAlreadyStarted : public Error {
 public:
  using Error::Error;
};

// Requested render format cannot represent the report's shape.
class IncompatibleRender : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace acctlens

#endif  // ACCTLENS_ERRORS_H_
