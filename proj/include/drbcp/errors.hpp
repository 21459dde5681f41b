#pragma once

#include <stdexcept>
#include <string>

namespace drbcp {

enum class ErrorKind {
  invalid_instance,
  domain,
  enumeration_limit,
  parse,
  dimension,
  numerical_convergence,
  invariant_violation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Location-aware failure while reading a scenario or instance file.
class ParseError : public Error {
 public:
  enum class Detail { malformed_header, ragged_row, non_numeric, bad_json };

  ParseError(Detail detail, long row, long column, const std::string& message);
  Detail detail() const { return detail_; }
  long row() const { return row_; }
  long column() const { return column_; }

 private:
  Detail detail_;
  long row_;
  long column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace drbcp
