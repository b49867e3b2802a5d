#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meshplan {

/// Base class for all errors raised by the planning library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating input (instance files, plan documents).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The instance admits no solution, or a solver cannot make progress.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Cross-structure mismatch: a plan refers to state absent from the instance
/// or violates a contract that the producing module guarantees.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Bad configuration tables (lookup outside the configured range).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Exhaustive search declined: the enumeration space is too large.
class OracleRefusalError : public Error {
public:
    OracleRefusalError(const std::string& what, std::uint64_t space)
        : Error(what), space_(space) {}
    std::uint64_t space() const { return space_; }

private:
    std::uint64_t space_;
};

/// The random generator could not produce a feasible instance.
class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace meshplan
