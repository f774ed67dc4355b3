#pragma once

#include <stdexcept>
#include <string>

namespace qdist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Negative eigenvalue below the clamping threshold.
class NotPsdError : public Error {
public:
    using Error::Error;
};

/// Requested truncation cannot hold the state within the tail tolerance.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Parameter outside the family's domain (|zeta| >= 1, degenerate cat, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Combination of inputs with no implemented evaluation route.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Invariant violated by a numerical result (non-Hermitian input, failed convergence, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace qdist
