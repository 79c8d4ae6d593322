#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subposet {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (family files, poset specs).
struct ParseError : Error {
    using Error::Error;
};

/// Violated precondition or out-of-range parameter.
struct DomainError : Error {
    using Error::Error;
};

/// A materialization would exceed its caller-supplied cap.
struct CapError : Error {
    using Error::Error;
};

/// A search or counting operation ran out of node budget.
/// The result so far is deliberately not exposed as a value: an exceeded
/// budget is an explicit error, never a silent wrong answer.
struct BudgetError : Error {
    BudgetError(const std::string& msg, std::uint64_t nodes)
        : Error(msg), nodes_spent(nodes) {}
    std::uint64_t nodes_spent;
};

}  // namespace subposet
