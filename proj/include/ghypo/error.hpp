#ifndef GHYPO_ERROR_HPP
#define GHYPO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ghypo {

/// Error categories; the numeric values double as CLI exit codes.
enum class ErrorCode : int {
  Schema = 2,
  Precondition = 3,
  SearchExhausted = 4,
  Precision = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

/// Raised by growth fitting when no admissible sample window exists.
class NoFit : public Error {
 public:
  explicit NoFit(const std::string& message) : Error(ErrorCode::Precondition, "hypo", message) {}
};

}  // namespace ghypo

#endif  // GHYPO_ERROR_HPP
