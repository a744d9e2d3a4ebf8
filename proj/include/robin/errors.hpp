#pragma once

#include <stdexcept>
#include <string>

namespace robin {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A function was called outside the parameter range its result is certified for.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class MalformedCurveError : public Error {
public:
    using Error::Error;
};

class MalformedDomainError : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

// β too small for the bracket constants; message names the failing inequality.
class ValidityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InternalConstantError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DiscretizationError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

// Input file or command line could not be understood.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace robin
