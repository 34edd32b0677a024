#pragma once

#include <stdexcept>
#include <string>

namespace supercong {

/// Base class for all library-specific failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation left the mathematical domain (factorial of a negative integer
/// in a numerator, division by an exactly-zero value, and similar).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// A rational with negative p-adic valuation cannot be reduced mod p^e.
class NegativeValuationError : public DomainError {
public:
    explicit NegativeValuationError(const std::string& what) : DomainError(what) {}
};

/// A rational function was evaluated at a zero of its denominator.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// The term is outside the fragment supported by symbolic ratio machinery
/// (inner sums, or factor families that do not cancel to a rational function).
class UnsupportedTermError : public Error {
public:
    explicit UnsupportedTermError(const std::string& what) : Error(what) {}
};

/// Syntax error in the congruence description language, with source position.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace supercong
