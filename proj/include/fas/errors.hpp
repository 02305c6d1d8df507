#pragma once

#include <stdexcept>
#include <string>

namespace fas {

// Argument outside the mathematical domain of a function (negative amplitude,
// probability outside [0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A model parameter that violates its family's invariant (θ < 1, m < 0.5, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Valid inputs that a particular routine does not handle, e.g. the closed-form
// outage expressions with heterogeneous port marginals.
class UnsupportedConfiguration : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An iterative routine exceeded its iteration cap.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fas
