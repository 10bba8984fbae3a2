#pragma once

#include <cstddef>
#include <vector>

#include "modalid/time_series.hpp"

namespace modalid {

/// Settings for largest-component extraction.
struct HvdConfig {
    /// Low-pass cutoff used both to average the instantaneous frequency and
    /// to demodulate. Must stay strictly below the lowest carrier frequency.
    /// Values <= 0 select 1/10 of the median estimated carrier frequency.
    double lowpass_cutoff_hz = 0.0;
    int demod_iterations = 3;
    double edge_trim_fraction = 0.05;  ///< in [0, 0.5)
};

struct HvdResult {
    TimeSeries component;          ///< largest monocomponent
    TimeSeries residual;           ///< input - component, exactly
    std::vector<double> envelope;  ///< demodulated component envelope
    std::vector<double> phase;     ///< component phase, unwrapped, radians
    std::size_t valid_begin = 0;   ///< edge-trim flags; samples are kept
    std::size_t valid_end = 0;
    double cutoff_hz = 0.0;        ///< cutoff actually used
};

/// Extracts the largest non-stationary component by synchronous demodulation:
/// estimate the instantaneous frequency, low-pass it, integrate to a
/// reference phase, demodulate against that phase to recover envelope and
/// phase offset, then refine the reference a configurable number of times.
///
/// Throws numeric_error naming the offending time span when the smoothed
/// instantaneous frequency dips below the cutoff inside the untrimmed region.
HvdResult hvd_largest_component(const TimeSeries& x, const HvdConfig& cfg = {});

/// 10*log10(power(component) / power(x - component)); +infinity when the
/// residual power is exactly zero.
double snr_estimate(const TimeSeries& x, const TimeSeries& component);

}  // namespace modalid
