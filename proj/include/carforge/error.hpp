// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace carforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live on different mode counts or multiplicities.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Mode index or argument outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Request would exceed the configured mode or dense-matrix cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a configuration outside the support of a measure.
class SupportError : public Error {
public:
    using Error::Error;
};

/// Input data violates a structural requirement (unitarity, cocycle laws, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A built-in family cannot be truncated to the requested mode count.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Operator does not commute with a real structure.
class InvarianceError : public Error {
public:
    using Error::Error;
};

/// Operation called on an input that fails its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Bad command-line usage: unknown command or demo, out-of-range flag.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Malformed descriptor; carries a location (line/column or JSON pointer).
class ParseError : public Error {
public:
    ParseError(const std::string& location, const std::string& message)
        : Error(location + ": " + message), location_(location) {}

    [[nodiscard]] const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

}  // namespace carforge
