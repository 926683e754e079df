#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace metriq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// A half or quarter power could not be resolved after substitution.
class NonRootableSubstitution : public Error {
 public:
  using Error::Error;
};

/// coeff_sqrt was asked for the root of a sum or of a non-square monomial.
class UnsupportedRoot : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string message, std::size_t offset, std::vector<std::string> expected)
      : Error(format(message, offset, expected)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, std::size_t offset,
                            const std::vector<std::string>& expected) {
    std::string out = "syntax error at byte " + std::to_string(offset) + ": " + message;
    if (!expected.empty()) {
      out += " (expected one of:";
      for (const auto& e : expected) out += " " + e;
      out += ")";
    }
    return out;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Some relation's leading coefficient vanishes, so it cannot be oriented.
class DegenerateMetric : public Error {
 public:
  explicit DegenerateMetric(std::vector<std::string> vanishing)
      : Error(format(vanishing)), vanishing_(std::move(vanishing)) {}

  const std::vector<std::string>& vanishing() const noexcept { return vanishing_; }

 private:
  static std::string format(const std::vector<std::string>& names) {
    std::string out = "degenerate metric: vanishing leading coefficient in";
    for (const auto& n : names) out += " " + n;
    return out;
  }

  std::vector<std::string> vanishing_;
};

class NonLorentzianSignature : public Error {
 public:
  using Error::Error;
};

class QFactorialZero : public Error {
 public:
  explicit QFactorialZero(int n)
      : Error("q-integer [" + std::to_string(n) + "]_q vanishes"), n_(n) {}
  int n() const noexcept { return n_; }

 private:
  int n_;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& file, long row, const std::string& field, const std::string& why)
      : Error(file + ": row " + std::to_string(row) + ", field '" + field + "': " + why),
        row_(row),
        field_(field) {}

  long row() const noexcept { return row_; }
  const std::string& field() const noexcept { return field_; }

 private:
  long row_;
  std::string field_;
};

}  // namespace metriq
