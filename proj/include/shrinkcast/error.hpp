#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shrinkcast {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kData = 3,
  kSampler = 4,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Invalid arguments passed to an operation (wrong sizes, out-of-range params).
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(what, ExitCode::kConfig) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what, ExitCode::kConfig) {}
};

// Malformed or unusable input data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what, ExitCode::kData) {}
};

class DomainError : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientDataError : public DataError {
 public:
  using DataError::DataError;
};

// A sampler state that should be impossible (non-positive scale, etc.).
class InternalStateError : public Error {
 public:
  explicit InternalStateError(const std::string& what) : Error(what, ExitCode::kSampler) {}
};

// Operation requested on a model that does not support it.
class CapabilityError : public Error {
 public:
  explicit CapabilityError(const std::string& what) : Error(what, ExitCode::kConfig) {}
};

class SamplerFailure : public Error {
 public:
  SamplerFailure(const std::string& what, std::size_t sweep)
      : Error(what + " (sweep " + std::to_string(sweep) + ")", ExitCode::kSampler),
        sweep_(sweep) {}
  std::size_t sweep() const noexcept { return sweep_; }

 private:
  std::size_t sweep_;
};

}  // namespace shrinkcast
