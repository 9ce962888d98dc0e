#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tpdl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// A configured cardinality or step budget was exceeded.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

// The solver hit its node cap or wall-clock limit.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

class ModelError : public Error {
public:
  using Error::Error;
};

}  // namespace tpdl
