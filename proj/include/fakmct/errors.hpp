#ifndef FAKMCT_ERRORS_HPP
#define FAKMCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fakmct {

/// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input: bad CSV, invalid parameters, mismatched dimensions.
class InputError : public Error {
public:
    using Error::Error;
};

/// The clustering itself failed (category capacity exhausted, unrecoverable empty cells).
class AlgorithmError : public Error {
public:
    using Error::Error;
};

/// A bundled fixture could not be reproduced.
class FixtureError : public Error {
public:
    using Error::Error;
};

}  // namespace fakmct

#endif  // FAKMCT_ERRORS_HPP
