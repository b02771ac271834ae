// errors.hpp
// Exception hierarchy shared by every module. The CLI maps these onto exit
// codes: ConfigError/DomainError/TableTooSmall -> 2, everything else -> 1.

#pragma once

#include <stdexcept>
#include <string>

namespace zrl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent run parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A mathematical precondition of an operation is violated.
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation too close to the pole of zeta at s = 1.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// The prime table does not reach far enough for the request.
class TableTooSmall : public Error {
public:
    TableTooSmall(const std::string& what, double required, double limit)
        : Error(what), required_(required), limit_(limit) {}
    double required() const { return required_; }
    double limit() const { return limit_; }

private:
    double required_;
    double limit_;
};

// An accuracy target could not be reached; carries what was achieved.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, double achieved_error, double partial_value)
        : Error(what), achieved_error_(achieved_error), partial_value_(partial_value) {}
    double achieved_error() const { return achieved_error_; }
    double partial_value() const { return partial_value_; }

private:
    double achieved_error_;
    double partial_value_;
};

// Enumeration or combinatorial budget exceeded.
class BudgetError : public Error {
public:
    using Error::Error;
};

}  // namespace zrl
