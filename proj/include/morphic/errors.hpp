#pragma once

#include <stdexcept>
#include <string>

namespace morphic {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input (bad rational literal, non-prime modulus, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// A configured resource cap (degree, precision, truncation) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Polynomial does not have good reduction at the requested prime.
class BadReductionError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// The input is valid but the requested quantity is undefined for it.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

}  // namespace morphic
