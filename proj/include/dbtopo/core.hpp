#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dbtopo {

using Index = std::int32_t;

/// Filtration parameter (epsilon for plain, kappa for locally scaled).
using Value = double;

inline constexpr Value kInfinity = std::numeric_limits<Value>::infinity();

/// Raised when user-supplied parameters or inputs break a documented contract.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file; carries the 1-based line number of the offending row.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The exhaustive Cech oracle was asked to run beyond the sizes it is exact and fast for.
class OracleScaleExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A simplex sequence that is not a valid filtration (a coface precedes a face).
class FiltrationOrderError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class GraphMode { Plain, LocallyScaled };

inline const char* to_string(GraphMode mode) {
  return mode == GraphMode::Plain ? "plain" : "locally-scaled";
}

GraphMode parse_graph_mode(const std::string& text);

}  // namespace dbtopo
