#pragma once

#include <stdexcept>
#include <string>

namespace afmsync {

/// Base type for every failure this library reports.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// model
struct BogoliubovDivergence : Error { using Error::Error; };
struct NonPositiveGeometry : Error { using Error::Error; };

// linalg
struct ConvergenceFailure : Error { using Error::Error; };
struct UnstableSystem : Error { using Error::Error; };
struct SingularSolve : Error { using Error::Error; };

// sync
struct UnphysicalCovariance : Error { using Error::Error; };
struct ZeroSyncDegree : Error { using Error::Error; };

// oracle
struct Diverged : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };

// bogoliubov
struct NoCrossing : Error { using Error::Error; };

// sweep / cli
struct UnknownMaterial : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace afmsync
