#pragma once

#include <stdexcept>
#include <string>

namespace fghopf
{

/// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Operands built over generator universes that do not extend one another.
class universe_mismatch : public error
{
public:
    using error::error;
};

/// A structure map or substitution met a generator it has no image for.
class missing_image : public error
{
public:
    using error::error;
};

/// Tensor position, arity or variable count outside the admissible range.
class position_error : public error
{
public:
    using error::error;
};

/// Substitution or inversion that cannot converge under weight truncation.
class convergence_error : public error
{
public:
    using error::error;
};

/// Violated precondition of an arithmetic or verification routine.
class precondition_error : public error
{
public:
    using error::error;
};

} // namespace fghopf
