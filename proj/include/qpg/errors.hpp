#pragma once

#include <stdexcept>
#include <string>

namespace qpg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

class InvalidSizeError : public Error {
public:
    using Error::Error;
};

class ZeroPolynomialError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class DegenerateLanguageError : public Error {
public:
    using Error::Error;
};

class UncertifiedDegreeError : public Error {
public:
    using Error::Error;
};

class MissingModelError : public Error {
public:
    using Error::Error;
};

// Signals an internal arithmetic inconsistency, not a user error.
class ModelViolationError : public Error {
public:
    using Error::Error;
};

class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& msg, std::string progress_report)
        : Error(msg), progress(std::move(progress_report)) {}
    std::string progress;
};

}  // namespace qpg
