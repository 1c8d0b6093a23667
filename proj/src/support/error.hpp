#pragma once

#include <stdexcept>
#include <string>

namespace pheno {

// Error taxonomy mirrors the CLI exit-code contract:
// Io -> 1, Parse/Compile/Validation/Usage -> 2, Consistency -> 3.
enum class ErrorKind {
  Io,
  Parse,
  Validation,
  Compile,
  Consistency,
  NotFound,
  Usage,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
      return 1;
    case ErrorKind::Consistency:
      return 3;
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::Compile:
    case ErrorKind::NotFound:
    case ErrorKind::Usage:
      return 2;
    case ErrorKind::Internal:
      return 4;
  }
  return 4;
}

}  // namespace pheno
