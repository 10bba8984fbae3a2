#pragma once

#include <vector>

namespace modalid {

/// Second-order IIR section, direct form II transposed.
struct Biquad {
    double b0, b1, b2;
    double a1, a2;  // a0 normalized to 1
};

/// Second-order Butterworth low-pass via bilinear transform.
/// Requires 0 < cutoff_hz < fs_hz / 2.
Biquad butterworth_lowpass(double cutoff_hz, double fs_hz);

/// Single forward pass with steady-state initial conditions scaled to x[0].
std::vector<double> filter_forward(const Biquad& f, const std::vector<double>& x);

/// Zero-phase forward-backward filtering with odd-reflection edge padding.
std::vector<double> filtfilt(const Biquad& f, const std::vector<double>& x);

}  // namespace modalid
