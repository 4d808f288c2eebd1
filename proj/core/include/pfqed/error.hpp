#pragma once

#include <stdexcept>
#include <string>

namespace pfqed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An argument violates the documented precondition of an operation.
class PreconditionError : public Error
{
  public:
    using Error::Error;
};

/// An iterative or adaptive procedure stopped before meeting its tolerance.
/// The best estimate reached so far travels with the exception.
class ConvergenceError : public Error
{
  public:
    ConvergenceError(std::string const& what, double best_estimate, double error_estimate)
        : Error(what)
        , best_estimate_(best_estimate)
        , error_estimate_(error_estimate)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

  private:
    double best_estimate_;
    double error_estimate_;
};

/// A linear solve or eigen solve failed inside LAPACK.
class LinearAlgebraError : public Error
{
  public:
    using Error::Error;
};

} // namespace pfqed
