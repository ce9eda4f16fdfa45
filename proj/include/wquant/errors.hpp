#pragma once

#include <stdexcept>
#include <string>

namespace wquant {

// Base of every error raised by the library. The CLI maps parameter-type
// errors to exit code 2 and numerical failures to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input parameters (family constraints, exponents, tolerances).
class ParameterOutOfRange : public Error {
public:
    using Error::Error;
};

// A point outside a function's domain, or a non-finite sample.
class DomainError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class NonIntegrableQuantizer : public Error {
public:
    using Error::Error;
};

class MonotonicityUndeclared : public Error {
public:
    using Error::Error;
};

class MissingDerivative : public Error {
public:
    using Error::Error;
};

class OutOfSpan : public Error {
public:
    using Error::Error;
};

class WrongExponent : public Error {
public:
    using Error::Error;
};

// The mismatch functional is infinite, so the error bound is vacuous.
class InfiniteFactor : public Error {
public:
    using Error::Error;
};

}  // namespace wquant
