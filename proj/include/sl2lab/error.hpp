#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sl2lab {

enum class Errc {
  LevelMismatch,
  DivisionByZero,
  NotInTower,
  NonDividingDegree,
  ExtensionUnavailable,
  IdentityInput,
  DeterminantNotOne,
  BudgetExceeded,
  FieldTooSmall,
  NotInJordanForm,
  EmptyT,
  ProjectionMismatch,
  Syntax,
  TooLarge,
  BadInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Parse error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
      : Error(Errc::Syntax, "line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

}  // namespace sl2lab
