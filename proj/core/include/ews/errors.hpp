#pragma once

#include <stdexcept>
#include <string>

namespace ews {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (CSV rows, key-value files, dates).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input violates a documented precondition or invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numeric computation left the representable/meaningful range
/// (variance underflow, non-finite density or loss).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Maximum-likelihood estimation failed on every start.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Vector or matrix dimensions do not match.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
public:
    using Error::Error;
};

/// A score is undefined for the given inputs (zero denominator,
/// single-class labels); the message names the metric.
class MetricError : public Error {
public:
    using Error::Error;
};

}  // namespace ews
