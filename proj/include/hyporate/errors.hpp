#pragma once

#include <stdexcept>
#include <string>

namespace hyporate {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct EmptyFeasibleSet : Error { using Error::Error; };
struct InfeasibleMode : Error { using Error::Error; };
struct DefectiveMatrix : Error { using Error::Error; };
struct ZeroEigenvalue : Error { using Error::Error; };
struct FamilyDomainError : Error { using Error::Error; };
struct CertificateViolation : Error { using Error::Error; };
struct DefectiveSigma : Error { using Error::Error; };
struct ThetaOutOfRange : Error { using Error::Error; };
struct EpsTooLarge : Error { using Error::Error; };
struct NonMonotoneRate : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace hyporate
