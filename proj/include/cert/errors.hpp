#pragma once

#include <stdexcept>
#include <string>

namespace cert {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct SingularBasis : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct UnknownGate : Error { using Error::Error; };
struct InfeasibleGap : Error { using Error::Error; };
struct BudgetTooTight : Error { using Error::Error; };
struct NotABadState : Error { using Error::Error; };
struct DependentRows : Error { using Error::Error; };
struct FidelityMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace cert
