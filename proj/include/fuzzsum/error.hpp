#pragma once

#include <stdexcept>
#include <string>

namespace fuzzsum {

/// Base of every error raised by the library. Callers that only need a
/// diagnostic can catch this and print what().
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class DataError : public Error {
public:
  using Error::Error;
};

class ClusteringError : public Error {
public:
  using Error::Error;
};

class ContextError : public Error {
public:
  using Error::Error;
};

class UsageError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// Query text that does not match the grammar. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Query that parses but cannot be given a meaning against the schema.
class SemanticError : public Error {
public:
  using Error::Error;
};

class UnsupportedComparator : public SemanticError {
public:
  using SemanticError::SemanticError;
};

class EmptySelection : public SemanticError {
public:
  using SemanticError::SemanticError;
};

}  // namespace fuzzsum
