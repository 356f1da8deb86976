#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orsched {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad permutation, mismatched sizes, ...).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// TSPLIB input could not be parsed. Carries the offending field and line.
class ParseError : public Error {
  public:
    ParseError(std::string field, std::size_t line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + " (" + field + "): " + what),
          field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

  private:
    std::string field_;
    std::size_t line_;
};

/// An exact method was asked to work beyond its configured size guard.
class LimitError : public Error {
  public:
    using Error::Error;
};

/// The recombination problem has more blocks than the configured cap allows.
class RecombinationTooLarge : public LimitError {
  public:
    RecombinationTooLarge(int q, int cap)
        : LimitError("recombination too large: q = " + std::to_string(q) + " exceeds cap " +
                     std::to_string(cap)),
          q_(q), cap_(cap) {}

    int q() const noexcept { return q_; }
    int cap() const noexcept { return cap_; }

  private:
    int q_;
    int cap_;
};

} // namespace orsched
