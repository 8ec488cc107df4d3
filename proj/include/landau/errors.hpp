#pragma once

#include <stdexcept>
#include <string>

namespace landau {

// Base of every failure the algorithm can report. exit_code() is the
// process status the CLI returns for it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

// The benefit bound B reached B1, so the prefix/suffix split is not valid.
class BoundFailure : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

// A possible normalized prefix violates p_{k+w+1} - m >= sqrt(x1).
class PkOmegaViolation : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

// A table or a result would not fit the configured budget.
class CapacityError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

// delta1(p) search passed its ceiling 4 * 2.55 (log p)^2.
class Delta1CeilingError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

// An internal consistency check failed.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace landau
