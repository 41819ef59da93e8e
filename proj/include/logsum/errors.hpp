#pragma once

#include <stdexcept>
#include <string>

namespace logsum {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function being evaluated.
class domain_error : public error {
public:
    using error::error;
};

/// A documented precondition of an inequality check does not hold.
class precondition_error : public error {
public:
    using error::error;
};

/// Matrix shapes or family sizes do not line up.
class dimension_error : public error {
public:
    using error::error;
};

/// Two matrices that must commute do not, at the configured tolerance.
class commutation_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

/// An eigenvalue required to be bounded away from zero is not.
class singularity_error : public error {
public:
    using error::error;
};

/// rho carries weight where sigma vanishes; the relative entropy is +infinity.
class support_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Iterative numerics (the eigensolver) failed to converge.
class convergence_error : public error {
public:
    using error::error;
};

} // namespace logsum
