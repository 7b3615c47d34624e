#pragma once

#include <optional>

#include "afmsync/model.hpp"

namespace afmsync {

/// Synchronization of the two magnon modes for both cavity resonances.
/// s12 belongs to the bright mode (omega_c + delta_f), s21 to the dark mode;
/// an unstable direction leaves its value (and s_iso) absent.
struct SyncResult {
    std::optional<double> s12;
    std::optional<double> s21;
    std::optional<double> s_iso; ///< decibels, >= 0
    bool stable_bright = false;
    bool stable_dark = false;
};

/// Steady covariance matrices behind a SyncResult, for callers that need to
/// inspect the Gaussian state itself (absent for unstable directions).
struct PairDetail {
    std::optional<CovarianceMatrix> v_bright;
    std::optional<CovarianceMatrix> v_dark;
};

/// Degree of quantum synchronization 1 / <X_-^2 + Y_-^2> computed from the
/// steady covariance; bounded by 1 through the Heisenberg relation.
/// Throws UnphysicalCovariance when the bound is violated beyond 1e-8 or the
/// variances are not positive.
double sync_degree(const CovarianceMatrix& v);

/// Synchronization isolation ratio 20*log10(max(|s12/s21|, |s21/s12|)).
/// Throws ZeroSyncDegree unless both inputs are strictly positive.
double sir(double s12, double s21);

/// Runs the full steady-state pipeline for both cavity modes. Solver errors
/// in one direction leave that direction absent without aborting the other.
SyncResult nonreciprocal_pair(const SystemParams& params, PairDetail* detail = nullptr);

} // namespace afmsync
