#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectrum {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. line() is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class ModelError : public Error {
public:
  using Error::Error;
};

class UnsupportedSemantics : public Error {
public:
  using Error::Error;
};

class SemanticsMismatch : public Error {
public:
  using Error::Error;
};

/// Formula or term without a uniform depth.
class IllFormed : public Error {
public:
  using Error::Error;
};

class VocabularyError : public Error {
public:
  using Error::Error;
};

}  // namespace spectrum
