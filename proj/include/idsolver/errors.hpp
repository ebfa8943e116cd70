#pragma once

#include <stdexcept>
#include <string>

namespace idsolver {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message)
        , line_(line)
        , column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Raised when a predicate is not well-defined for the values at hand.
class WellDefinednessError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public WellDefinednessError {
public:
    DivisionByZero() : WellDefinednessError("division by zero") {}
};

/// Integer results outside the supported magnitude are reported, never wrapped.
class OverflowError : public WellDefinednessError {
public:
    using WellDefinednessError::WellDefinednessError;
};

class InfiniteQuantifier : public Error {
public:
    explicit InfiniteQuantifier(const std::string& var)
        : Error("cannot bound the range of quantified variable '" + var + "' from its guard") {}
};

class UnassignedVariable : public Error {
public:
    explicit UnassignedVariable(const std::string& var)
        : Error("variable '" + var + "' has no value in the assignment") {}
};

class CompileError : public Error {
public:
    using Error::Error;
};

class UnknownScope : public Error {
public:
    explicit UnknownScope(int id) : Error("unknown scope id " + std::to_string(id)) {}
};

class IntervalTooLarge : public Error {
public:
    IntervalTooLarge() : Error("interval length exceeds 2^62") {}
};

}  // namespace idsolver
