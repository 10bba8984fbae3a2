#include "modalid/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>

#include "modalid/errors.hpp"

namespace modalid {

void validate_time_series(const TimeSeries& ts, std::size_t min_len,
                          const std::string& context) {
    const std::string where = context.empty() ? "time series" : context;
    if (!(ts.dt > 0.0) || !std::isfinite(ts.dt))
        throw data_error(where + ": sample step must be positive and finite");
    if (ts.size() < min_len)
        throw data_error(where + ": too short (" + std::to_string(ts.size()) +
                         " samples, need >= " + std::to_string(min_len) + ")");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!std::isfinite(ts.samples[i]))
            throw data_error(where + ": non-finite sample at index " + std::to_string(i));
    }
}

bool aligned(const TimeSeries& a, const TimeSeries& b) {
    if (a.size() != b.size()) return false;
    if (std::abs(a.dt - b.dt) > 1e-9 * std::max(a.dt, b.dt)) return false;
    if (std::abs(a.t0 - b.t0) > 1e-6 * a.dt) return false;
    return true;
}

void require_aligned(const TimeSeries& a, const TimeSeries& b, const std::string& context) {
    if (!aligned(a, b))
        throw data_error((context.empty() ? std::string("series") : context) +
                         ": series are not aligned (t0/dt/length mismatch)");
}

double sample_at(const TimeSeries& ts, double t) {
    if (ts.samples.empty()) throw data_error("sample_at: empty series");
    const double pos = (t - ts.t0) / ts.dt;
    if (pos <= 0.0) return ts.samples.front();
    const auto n = ts.size();
    if (pos >= static_cast<double>(n - 1)) return ts.samples.back();
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return ts.samples[i] + frac * (ts.samples[i + 1] - ts.samples[i]);
}

namespace {

// FFTW plan creation is not thread-safe; execution of independent plans is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

// H[y] via the one-sided spectral multiplier -j*sgn(f). DC and Nyquist bins
// are zeroed.
std::vector<double> hilbert_fft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const std::size_t nbins = n / 2 + 1;

    std::vector<double> in(x);
    std::vector<std::complex<double>> spec(nbins);
    std::vector<double> out(n);

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                   reinterpret_cast<fftw_complex*>(spec.data()),
                                   FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(spec.data()),
                                   out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    spec[0] = 0.0;
    const std::complex<double> minus_j(0.0, -1.0);
    const std::size_t last = (n % 2 == 0) ? nbins - 1 : nbins;
    for (std::size_t k = 1; k < last; ++k) spec[k] *= minus_j;
    if (n % 2 == 0) spec[nbins - 1] = 0.0;

    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace

std::vector<double> hilbert_transform(const TimeSeries& x) {
    validate_time_series(x, 16, "hilbert_transform");
    const double mean =
        std::accumulate(x.samples.begin(), x.samples.end(), 0.0) / static_cast<double>(x.size());
    std::vector<double> centered(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) centered[i] = x.samples[i] - mean;
    return hilbert_fft(centered);
}

std::vector<double> differentiate(const std::vector<double>& x, double dt) {
    if (x.size() < 3) throw data_error("differentiate: need at least 3 samples");
    if (!(dt > 0.0)) throw data_error("differentiate: dt must be positive");
    const std::size_t n = x.size();
    std::vector<double> d(n);
    const double inv2dt = 1.0 / (2.0 * dt);
    d[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) * inv2dt;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - x[i - 1]) * inv2dt;
    d[n - 1] = (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) * inv2dt;
    return d;
}

void unwrap_inplace(std::vector<double>& phase) {
    constexpr double pi = 3.14159265358979323846;
    double offset = 0.0;
    for (std::size_t i = 1; i < phase.size(); ++i) {
        const double raw = phase[i];
        double prev = phase[i - 1];
        double delta = raw + offset - prev;
        while (delta > pi) {
            offset -= 2.0 * pi;
            delta -= 2.0 * pi;
        }
        while (delta < -pi) {
            offset += 2.0 * pi;
            delta += 2.0 * pi;
        }
        phase[i] = raw + offset;
    }
}

AnalyticRecord make_analytic(const TimeSeries& x, double edge_trim_fraction) {
    validate_time_series(x, 16, "make_analytic");
    if (edge_trim_fraction < 0.0 || edge_trim_fraction >= 0.5)
        throw config_error("make_analytic: edge_trim_fraction must be in [0, 0.5)");

    AnalyticRecord rec;
    const std::size_t n = x.size();
    const double mean =
        std::accumulate(x.samples.begin(), x.samples.end(), 0.0) / static_cast<double>(n);

    rec.base.t0 = x.t0;
    rec.base.dt = x.dt;
    rec.base.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) rec.base.samples[i] = x.samples[i] - mean;
    rec.removed_mean = mean;

    rec.hilbert = hilbert_fft(rec.base.samples);
    rec.d1 = differentiate(rec.base.samples, x.dt);
    rec.d1_h = differentiate(rec.hilbert, x.dt);
    rec.d2 = differentiate(rec.d1, x.dt);
    rec.d2_h = differentiate(rec.d1_h, x.dt);

    rec.envelope.resize(n);
    rec.phase.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rec.envelope[i] = std::hypot(rec.base.samples[i], rec.hilbert[i]);
        rec.phase[i] = std::atan2(rec.hilbert[i], rec.base.samples[i]);
    }
    unwrap_inplace(rec.phase);
    rec.inst_freq = differentiate(rec.phase, x.dt);

    const auto trim = static_cast<std::size_t>(edge_trim_fraction * static_cast<double>(n));
    rec.valid_begin = trim;
    rec.valid_end = n - trim;
    return rec;
}

}  // namespace modalid
