#pragma once

#include <stdexcept>
#include <string>

namespace ssg {

// Error categories map onto the CLI exit-code contract:
//   validation -> 2, verification -> 3, budget -> 4.
enum class ErrorKind { Validation, Verification, Budget };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::Validation: return 2;
      case ErrorKind::Verification: return 3;
      case ErrorKind::Budget: return 4;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error validation_error(const std::string& code, const std::string& msg) {
  return Error(ErrorKind::Validation, code, msg);
}
inline Error verification_error(const std::string& code, const std::string& msg) {
  return Error(ErrorKind::Verification, code, msg);
}
inline Error budget_error(const std::string& code, const std::string& msg) {
  return Error(ErrorKind::Budget, code, msg);
}

}  // namespace ssg
