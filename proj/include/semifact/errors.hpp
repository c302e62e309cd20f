#pragma once

#include <stdexcept>
#include <string>

namespace semifact {

// Bad argument for the operation (out of domain, not a member, wrong shape).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised by canonical_digits when the reduction fails.
struct NotMember : DomainError {
    using DomainError::DomainError;
};

// A bounded search could not decide.
struct Inconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Unsupported : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// SEMIFACT_MAX_MEM exceeded.
struct ResourceExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace semifact
