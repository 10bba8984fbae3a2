#include "modalid/filters.hpp"

#include <algorithm>
#include <cmath>

#include "modalid/errors.hpp"

namespace modalid {

Biquad butterworth_lowpass(double cutoff_hz, double fs_hz) {
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * fs_hz))
        throw config_error("butterworth_lowpass: cutoff must lie in (0, fs/2)");
    constexpr double pi = 3.14159265358979323846;
    const double K = std::tan(pi * cutoff_hz / fs_hz);
    const double q = 1.0 / std::sqrt(2.0);
    const double norm = 1.0 / (1.0 + K / q + K * K);
    Biquad f;
    f.b0 = K * K * norm;
    f.b1 = 2.0 * f.b0;
    f.b2 = f.b0;
    f.a1 = 2.0 * (K * K - 1.0) * norm;
    f.a2 = (1.0 - K / q + K * K) * norm;
    return f;
}

namespace {

// Steady-state DF2T state for a unit step, so the forward pass starts without
// a startup transient when scaled by x[0].
void step_state(const Biquad& f, double z[2]) {
    const double gain = (f.b0 + f.b1 + f.b2) / (1.0 + f.a1 + f.a2);
    z[1] = f.b2 - f.a2 * gain;
    z[0] = f.b1 - f.a1 * gain + z[1];
}

void run(const Biquad& f, const std::vector<double>& x, std::vector<double>& y) {
    double z[2];
    step_state(f, z);
    z[0] *= x.empty() ? 0.0 : x.front();
    z[1] *= x.empty() ? 0.0 : x.front();
    y.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double yi = f.b0 * xi + z[0];
        z[0] = f.b1 * xi - f.a1 * yi + z[1];
        z[1] = f.b2 * xi - f.a2 * yi;
        y[i] = yi;
    }
}

}  // namespace

std::vector<double> filter_forward(const Biquad& f, const std::vector<double>& x) {
    std::vector<double> y;
    run(f, x, y);
    return y;
}

std::vector<double> filtfilt(const Biquad& f, const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 4) throw data_error("filtfilt: need at least 4 samples");

    // Odd reflection about the endpoints removes most edge transients.
    std::size_t pad = std::min<std::size_t>(n - 1, 3 * 16);
    // Heavier padding when the filter is slow relative to the sample rate.
    const double pole_mag = std::sqrt(std::max(std::abs(f.a2), 1e-12));
    if (pole_mag > 0.5) {
        const double tau = -1.0 / std::log(pole_mag);
        pad = std::min<std::size_t>(n - 1, std::max<std::size_t>(pad, static_cast<std::size_t>(6.0 * tau)));
    }

    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 2; i <= pad + 1; ++i) ext.push_back(2.0 * x.back() - x[n - i]);

    std::vector<double> tmp;
    run(f, ext, tmp);
    std::reverse(tmp.begin(), tmp.end());
    std::vector<double> out;
    run(f, tmp, out);
    std::reverse(out.begin(), out.end());

    return std::vector<double>(out.begin() + static_cast<std::ptrdiff_t>(pad),
                               out.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

}  // namespace modalid
