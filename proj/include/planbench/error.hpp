#pragma once

#include <stdexcept>
#include <string>

namespace planbench {

/// Raised when a caller breaks a documented precondition (wrong dimension,
/// parameter out of range).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input document. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace planbench
