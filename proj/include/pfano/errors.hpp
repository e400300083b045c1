#pragma once

#include <stdexcept>
#include <string>

namespace pfano {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    explicit NotPrimeError(unsigned long q)
        : Error("not a prime modulus: " + std::to_string(q)) {}
};

struct FieldMismatchError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

struct ShapeMismatchError : Error {
    using Error::Error;
};

struct GroundSetTooLargeError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct NotDecodableError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace pfano
