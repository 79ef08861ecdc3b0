#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

//! Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

//! Request for a regime the theory rules out (not a numerics failure).
class UnsupportedRegime : public std::invalid_argument {
public:
    explicit UnsupportedRegime(const std::string& what) : std::invalid_argument(what) {}
};

//! Explicit time step too large for the stability guard.
class StepSizeError : public std::runtime_error {
public:
    explicit StepSizeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nonlocal
