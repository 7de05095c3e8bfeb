#pragma once

#include <stdexcept>
#include <string>

namespace epl {

// Base for every library error. CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error { using Error::Error; };
class SingularityError : public Error { using Error::Error; };
class DegenerateMaterialError : public Error { using Error::Error; };
class PoleError : public Error { using Error::Error; };
class DegreeError : public Error { using Error::Error; };
class SingularSystemError : public Error { using Error::Error; };
class ResolutionError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class BoundaryEvaluationError : public Error { using Error::Error; };

class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class InstabilityError : public Error { using Error::Error; };

}  // namespace epl
