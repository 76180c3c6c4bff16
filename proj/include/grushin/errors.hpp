#pragma once

#include <stdexcept>
#include <string>

namespace grushin {

// Base of every failure raised by the library. The CLI maps each subclass
// onto a fixed process exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidProblem : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class BracketFailure : public Error {
public:
    using Error::Error;
};

class DegenerateGrid : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class BaselineMissing : public Error {
public:
    using Error::Error;
};

}  // namespace grushin
