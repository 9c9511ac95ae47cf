#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace peakmdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A state or action index outside the environment.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The environment has no action cycle through a state, so no cycle-based
/// peak (and no continuing trajectory) exists there.
class NoCycleError : public Error {
public:
    using Error::Error;
};

enum class ValidationCode {
    Malformed,
    UnknownField,
    BadShape,
    GammaOutOfRange,
    EmptyRewards,
    NonPositiveReward,
    RewardOutOfBounds,
    DuplicateReward,
    NoCycle,
};

std::string_view to_string(ValidationCode code);

/// Rejected problem statement or document. `code()` names the rule that failed.
class ValidationError : public Error {
public:
    ValidationError(ValidationCode code, const std::string& what)
        : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ValidationCode code() const noexcept { return code_; }

private:
    ValidationCode code_;
};

/// Value iteration exceeded its safety cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace peakmdp
