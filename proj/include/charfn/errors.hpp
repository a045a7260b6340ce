#pragma once

#include <stdexcept>
#include <string>

namespace charfn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation diverged: a denominator vanished or the value overflowed the
// pole guard.
class PoleEncountered : public Error {
public:
    using Error::Error;
};

class DegenerateMap : public Error {
public:
    using Error::Error;
};

class EmptyMeasure : public Error {
public:
    using Error::Error;
};

class WindowTooSmall : public Error {
public:
    using Error::Error;
};

class NotContractive : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class QuadratureFailed : public Error {
public:
    using Error::Error;
};

// Bad construction arguments, kind mismatches and inconsistent tags.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace charfn
