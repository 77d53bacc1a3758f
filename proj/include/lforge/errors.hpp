#pragma once

#include <stdexcept>
#include <string>

namespace lforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that cannot be loaded: bad descriptors, undeclared generators,
/// malformed files. Maps to CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(message + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class PresentationMismatch : public Error {
 public:
  PresentationMismatch() : Error("operands live in different presentations") {}
};

/// A map image violates the filtered or graded condition.
class FiltrationViolation : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class MissingEntry : public Error {
 public:
  using Error::Error;
};

class DivisibilityFailure : public Error {
 public:
  DivisibilityFailure(int k, std::string generator)
      : Error("lambda^" + std::to_string(k) + "(" + generator +
              ") is not integral: Newton sum not divisible by " + std::to_string(k)),
        k_(k),
        generator_(std::move(generator)) {}

  int k() const noexcept { return k_; }
  const std::string& generator() const noexcept { return generator_; }

 private:
  int k_;
  std::string generator_;
};

class TorsionCoefficients : public Error {
 public:
  TorsionCoefficients() : Error("coefficient ring is not torsion free") {}
};

/// The lifting lemmas only apply strictly above the bound N.
class LevelTooLow : public Error {
 public:
  LevelTooLow(int level, int bound)
      : Error("level " + std::to_string(level) + " is not above N = " + std::to_string(bound)),
        level_(level),
        bound_(bound) {}

  int level() const noexcept { return level_; }
  int bound() const noexcept { return bound_; }

 private:
  int level_;
  int bound_;
};

class RelationViolation : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class MalformedStructure : public Error {
 public:
  using Error::Error;
};

class InvalidTransport : public Error {
 public:
  using Error::Error;
};

class Unsatisfiable : public Error {
 public:
  Unsatisfiable(const std::string& message, int level) : Error(message), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

}  // namespace lforge
