#pragma once

#include <stdexcept>
#include <string>

namespace pottszero {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters or a violated precondition (regime checks, malformed graphs).
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidRootError : public DomainError {
public:
    using DomainError::DomainError;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class UndefinedMeasureError : public Error {
public:
    using Error::Error;
};

class ZeroRatioError : public Error {
public:
    using Error::Error;
};

class BranchError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class StepTooLargeError : public Error {
public:
    using Error::Error;
};

class CannotInterpolateError : public Error {
public:
    using Error::Error;
};

class UnknownBoundError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace pottszero
