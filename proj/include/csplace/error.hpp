#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csplace {

enum class ErrorCode {
  // roadmap
  DuplicateVertex,
  DanglingEdge,
  NonPositiveLength,
  SelfLoop,
  DuplicateEdge,
  // traces
  MalformedRow,
  DuplicateTruckInFrame,
  NonMonotoneTimestamps,
  MissingDistanceMatrix,
  // shapes / sizes
  DimensionMismatch,
  InstanceTooLarge,
  InvalidArgument,
  // I/O and configuration
  FileError,
  ConfigError,
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateTruckInFrame: return "DuplicateTruckInFrame";
    case ErrorCode::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case ErrorCode::MissingDistanceMatrix: return "MissingDistanceMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FileError: return "FileError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library. `line()` is the 1-based source line
/// for parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

  /// Configuration problems map to exit code 3, everything else is an input error.
  bool is_config_error() const noexcept {
    return code_ == ErrorCode::ConfigError || code_ == ErrorCode::InvalidArgument;
  }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace csplace
