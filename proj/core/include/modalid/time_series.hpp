#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace modalid {

/// Uniformly sampled real-valued signal.
struct TimeSeries {
    double t0 = 0.0;              ///< time of samples[0], seconds
    double dt = 1.0;              ///< sample step, seconds (> 0)
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double fs() const { return 1.0 / dt; }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    /// Time of the last sample.
    double t_end() const { return samples.empty() ? t0 : time_at(samples.size() - 1); }
};

/// Throws data_error unless dt > 0, length >= min_len and every sample is finite.
void validate_time_series(const TimeSeries& ts, std::size_t min_len = 16,
                          const std::string& context = "");

/// True when the two series share t0, dt and length (tolerances relative to dt).
bool aligned(const TimeSeries& a, const TimeSeries& b);

/// Throws data_error unless aligned(a, b).
void require_aligned(const TimeSeries& a, const TimeSeries& b,
                     const std::string& context = "");

/// Linear interpolation at time t; clamps outside [t0, t_end].
double sample_at(const TimeSeries& ts, double t);

}  // namespace modalid
