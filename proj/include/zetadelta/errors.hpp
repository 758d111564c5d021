#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetadelta {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

// Non-increasing zero sequence; carries the 0-based index of the offender.
class OrderError : public Error {
  public:
    OrderError(std::size_t index, const std::string& what)
        : Error("index " + std::to_string(index) + ": " + what), index_(index) {}
    std::size_t index() const { return index_; }

  private:
    std::size_t index_;
};

class EmptyInputError : public Error {
  public:
    using Error::Error;
};

class BoundsError : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class LagError : public Error {
  public:
    using Error::Error;
};

class InputError : public Error {
  public:
    using Error::Error;
};

class DegenerateSampleError : public Error {
  public:
    using Error::Error;
};

class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace zetadelta
