#pragma once

#include <cstddef>
#include <vector>

#include "modalid/time_series.hpp"

namespace modalid {

/// Analytic-signal record for one channel: the mean-removed signal, its
/// Hilbert transform, first and second derivatives of both, and the derived
/// envelope / unwrapped phase / instantaneous frequency.
struct AnalyticRecord {
    TimeSeries base;               ///< mean-removed signal y
    double removed_mean = 0.0;     ///< subtracted before transforming
    std::vector<double> hilbert;   ///< H[y]
    std::vector<double> d1;        ///< dy/dt
    std::vector<double> d1_h;      ///< d(H[y])/dt
    std::vector<double> d2;        ///< d2y/dt2
    std::vector<double> d2_h;      ///< d2(H[y])/dt2
    std::vector<double> envelope;  ///< sqrt(y^2 + H[y]^2)
    std::vector<double> phase;     ///< unwrapped atan2(H[y], y), radians
    std::vector<double> inst_freq; ///< d(phase)/dt, rad/s
    std::size_t valid_begin = 0;   ///< first sample outside the edge-trim zone
    std::size_t valid_end = 0;     ///< one past the last such sample

    std::size_t size() const { return base.size(); }
};

/// Frequency-domain Hilbert transform: unit gain, -pi/2 phase shift on
/// positive-frequency content. The input mean is removed first (DC maps to
/// zero). Throws data_error for non-finite input or length < 16.
std::vector<double> hilbert_transform(const TimeSeries& x);

/// Builds the full analytic record. Derivatives use central differences with
/// second-order one-sided stencils at the endpoints. The first and last
/// edge_trim_fraction of samples are flagged unreliable via
/// valid_begin/valid_end, never deleted.
AnalyticRecord make_analytic(const TimeSeries& x, double edge_trim_fraction = 0.05);

/// Central differences interior, second-order one-sided at the endpoints.
/// Exact for quadratics. Throws data_error when x.size() < 3.
std::vector<double> differentiate(const std::vector<double>& x, double dt);

/// Cumulative 2*pi jump correction applied in place.
void unwrap_inplace(std::vector<double>& phase);

}  // namespace modalid
