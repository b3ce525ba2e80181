#pragma once

#include <stdexcept>
#include <string>

namespace mixer {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument outside an operation's domain: bad patch side, non-positive
// regularization, mismatched shapes, invalid fusion sets.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// Input data that cannot be used: unreadable or malformed files, dataset
// layout violations, truncated payloads.
class DataError : public Error {
public:
    using Error::Error;
};

// A class has too few samples for the requested fit or fold structure.
class InsufficientClassDataError : public DataError {
public:
    using DataError::DataError;
};

// The congruential recurrence produced a constant sequence (zero variance).
class DegenerateSequenceError : public Error {
public:
    using Error::Error;
};

// Pooled within-class scatter is identically zero; no whitening exists.
class DegenerateScatterError : public Error {
public:
    using Error::Error;
};

} // namespace mixer
