#pragma once

#include <stdexcept>
#include <string>

namespace eprsteer {

/// Invalid input: out-of-range parameters, malformed matrices, unsupported
/// scheme sizes. The CLI maps this to exit code 1.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Statistical estimation cannot proceed (e.g. a setting with zero counts).
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical invariant that should hold by construction was violated.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace eprsteer
