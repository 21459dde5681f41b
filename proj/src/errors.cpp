#include "drbcp/errors.hpp"

namespace drbcp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_instance: return "invalid-instance";
    case ErrorKind::domain: return "domain";
    case ErrorKind::enumeration_limit: return "enumeration-limit";
    case ErrorKind::parse: return "parse";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::numerical_convergence: return "numerical-convergence";
    case ErrorKind::invariant_violation: return "invariant-violation";
  }
  return "unknown";
}

static const char* detail_name(ParseError::Detail d) {
  switch (d) {
    case ParseError::Detail::malformed_header: return "malformed header";
    case ParseError::Detail::ragged_row: return "ragged row";
    case ParseError::Detail::non_numeric: return "non-numeric cell";
    case ParseError::Detail::bad_json: return "bad json";
  }
  return "parse";
}

ParseError::ParseError(Detail detail, long row, long column, const std::string& message)
    : Error(ErrorKind::parse, std::string(detail_name(detail)) + " at row " + std::to_string(row) +
                                  ", column " + std::to_string(column) + ": " + message),
      detail_(detail),
      row_(row),
      column_(column) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace drbcp
