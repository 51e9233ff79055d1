#pragma once

#include <stdexcept>
#include <string>

namespace ordstat {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Empty sequence, non-finite value or malformed text.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class RankError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

// Requested work would exceed the configured recursion budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Missing variable or non-finite intermediate during expression evaluation.
class EvalError : public Error {
public:
    using Error::Error;
};

// Operation applied to an expression of the wrong form (e.g. min/max left in an SLP).
class FormError : public Error {
public:
    using Error::Error;
};

} // namespace ordstat
