#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace rotset {

enum class ErrorKind {
  validation,     // bad input: schema, dimensions, preconditions
  inconsistency,  // a model or internal invariant does not hold
  limit,          // a configured enumeration cap was exceeded
};

/// Base error for the library. `details` carries machine-readable context
/// (edge indices, lengths, residual vectors) for the CLI's JSON error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(what), kind_(kind), details_(std::move(details)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  ErrorKind kind_;
  nlohmann::json details_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, nlohmann::json details = nlohmann::json::object())
      : Error(ErrorKind::validation, what, std::move(details)) {}
};

class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what,
                              nlohmann::json details = nlohmann::json::object())
      : Error(ErrorKind::inconsistency, what, std::move(details)) {}
};

class LimitError : public Error {
 public:
  explicit LimitError(const std::string& what, nlohmann::json details = nlohmann::json::object())
      : Error(ErrorKind::limit, what, std::move(details)) {}
};

}  // namespace rotset
