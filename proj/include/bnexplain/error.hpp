#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnexplain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad files, unknown names, violated invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
  ValidationError(const std::string& what, std::vector<std::string> details)
      : Error(join(what, details)), details_(std::move(details)) {}

  const std::vector<std::string>& details() const { return details_; }

 private:
  static std::string join(const std::string& head, const std::vector<std::string>& lines) {
    std::string out = head;
    for (const auto& l : lines) out += "\n  " + l;
    return out;
  }

  std::vector<std::string> details_;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Conditioning on an event of probability zero.
class InferenceError : public Error {
 public:
  using Error::Error;
};

class ImpossibleExplanation : public InferenceError {
 public:
  using InferenceError::InferenceError;
};

class ImpossibleExplanandum : public InferenceError {
 public:
  using InferenceError::InferenceError;
};

class UnknownScenario : public Error {
 public:
  explicit UnknownScenario(const std::string& name) : Error("unknown scenario: " + name) {}
};

}  // namespace bnexplain
