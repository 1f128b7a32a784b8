#pragma once

#include <stdexcept>
#include <string>

namespace shear {

/// Parameters outside the domain where the cone construction applies.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A truncated double sum whose doubling check exceeded the tail tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated internal consistency check (e.g. a closed form disagreeing with
/// its eigen-decomposition cross-check).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace shear
