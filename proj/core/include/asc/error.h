// Error types raised across the toolkit.

#ifndef ASC_ERROR_H_
#define ASC_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace asc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `location` is a byte offset or a 1-based line
// number depending on the format; the message says which.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t location)
      : Error(what), location_(location) {}
  std::size_t location() const { return location_; }

 private:
  std::size_t location_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A metric whose denominator is empty (no admissible units, single-class
// labels for AUC).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// Pipeline stage failure; wraps the underlying cause.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Non-fatal findings (dropped entries, short seed lists, ...). Operations
// that can warn take an optional pointer to one of these.
using Diagnostics = std::vector<std::string>;

inline void Warn(Diagnostics* diag, std::string message) {
  if (diag != nullptr) diag->push_back(std::move(message));
}

}  // namespace asc

#endif  // ASC_ERROR_H_
