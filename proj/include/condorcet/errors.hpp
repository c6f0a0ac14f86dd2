#pragma once

#include <stdexcept>
#include <string>

namespace condorcet {

// Argument outside the operation's mathematical domain (bad m, i == j, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Enumeration would exceed the configured work budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pairwise variance 1 - lambda^2 vanished where a correlation was requested.
class DegenerateVarianceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Matrix is not positive semidefinite even after the allowed diagonal jitter.
class MatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed culture input. The message carries the line/field location.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace condorcet
