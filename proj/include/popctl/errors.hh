#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace popctl {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Input that is well-formed but violates a semantic constraint (illegal split,
/// non successor-closed accumulator, bad generator parameter, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A split that breaks conservation or uses an edge the automaton does not have.
class InvalidSplit : public ValidationError {
public:
    InvalidSplit(std::string state, const std::string& what) : ValidationError(what), state_(std::move(state)) {}
    const std::string& state() const { return state_; }

private:
    std::string state_;
};

/// Raised when an explicit exploration budget is exhausted. Carries how far the
/// exploration got so callers can report partial progress.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t explored)
        : std::runtime_error(what), explored_(explored) {}
    std::size_t explored() const { return explored_; }

private:
    std::size_t explored_;
};

/// A caller broke an API precondition (e.g. fed a controller an incompatible graph).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace popctl
