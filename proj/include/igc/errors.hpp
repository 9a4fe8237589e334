#pragma once

#include <stdexcept>
#include <string>

namespace igc {

/// Raised when an argument falls outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation's precondition on its input structure does not hold.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Internal cross-check failed (an invariant the construction should guarantee).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A brute-force or enumeration budget would be exceeded.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Region carries fewer than three units of marked weight; caller should emit a leaf.
class TrivialRegion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace igc
