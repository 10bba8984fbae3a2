#include "modalid/hvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modalid/errors.hpp"
#include "modalid/filters.hpp"
#include "modalid/signal.hpp"

namespace modalid {

namespace {

constexpr double two_pi = 6.28318530717958647692;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

std::vector<double> cumtrapz(const std::vector<double>& v, double dt) {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (v[i - 1] + v[i]) * dt;
    return out;
}

// The smoothed carrier frequency must stay above the cutoff inside the
// untrimmed region, otherwise demodulation cannot separate envelope from
// carrier.
void check_reference(const std::vector<double>& omega_ref, const TimeSeries& x,
                     double cutoff_hz, std::size_t begin, std::size_t end) {
    const double floor_rad = two_pi * cutoff_hz;
    std::size_t first = end, last = end;
    for (std::size_t i = begin; i < end; ++i) {
        if (omega_ref[i] < floor_rad) {
            if (first == end) first = i;
            last = i;
        }
    }
    if (first != end) {
        throw numeric_error(
            "hvd: instantaneous frequency drops below the " + std::to_string(cutoff_hz) +
            " Hz cutoff between t=" + std::to_string(x.time_at(first)) +
            " s and t=" + std::to_string(x.time_at(last)) + " s");
    }
}

}  // namespace

HvdResult hvd_largest_component(const TimeSeries& x, const HvdConfig& cfg) {
    validate_time_series(x, 16, "hvd_largest_component");
    if (cfg.demod_iterations < 1)
        throw config_error("hvd: demod_iterations must be >= 1");
    if (cfg.edge_trim_fraction < 0.0 || cfg.edge_trim_fraction >= 0.5)
        throw config_error("hvd: edge_trim_fraction must be in [0, 0.5)");

    const std::size_t n = x.size();
    const double fs = x.fs();
    AnalyticRecord rec = make_analytic(x, cfg.edge_trim_fraction);

    double cutoff = cfg.lowpass_cutoff_hz;
    if (cutoff <= 0.0) {
        std::vector<double> interior(rec.inst_freq.begin() + static_cast<std::ptrdiff_t>(rec.valid_begin),
                                     rec.inst_freq.begin() + static_cast<std::ptrdiff_t>(rec.valid_end));
        cutoff = median_of(std::move(interior)) / two_pi / 10.0;
    }
    if (!(cutoff > 0.0) || !(cutoff < 0.5 * fs))
        throw config_error("hvd: low-pass cutoff must lie in (0, fs/2); got " +
                           std::to_string(cutoff) + " Hz");

    const Biquad lp = butterworth_lowpass(cutoff, fs);
    const std::vector<double>& y = rec.base.samples;  // mean removed

    std::vector<double> omega_ref = filtfilt(lp, rec.inst_freq);
    check_reference(omega_ref, x, cutoff, rec.valid_begin, rec.valid_end);
    std::vector<double> phi_ref = cumtrapz(omega_ref, x.dt);

    std::vector<double> envelope(n), delta(n), phi_total(n);
    std::vector<double> in_phase(n), quadrature(n);
    for (int iter = 0; iter < cfg.demod_iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            in_phase[i] = 2.0 * y[i] * std::cos(phi_ref[i]);
            quadrature[i] = -2.0 * y[i] * std::sin(phi_ref[i]);
        }
        const std::vector<double> cf = filtfilt(lp, in_phase);
        const std::vector<double> sf = filtfilt(lp, quadrature);
        for (std::size_t i = 0; i < n; ++i) {
            envelope[i] = std::hypot(cf[i], sf[i]);
            delta[i] = std::atan2(sf[i], cf[i]);
        }
        unwrap_inplace(delta);
        for (std::size_t i = 0; i < n; ++i) phi_total[i] = phi_ref[i] + delta[i];

        if (iter + 1 < cfg.demod_iterations) {
            omega_ref = filtfilt(lp, differentiate(phi_total, x.dt));
            check_reference(omega_ref, x, cutoff, rec.valid_begin, rec.valid_end);
            phi_ref = cumtrapz(omega_ref, x.dt);
            const double anchor = phi_total[0] - phi_ref[0];
            for (auto& p : phi_ref) p += anchor;
        }
    }

    HvdResult res;
    res.component.t0 = x.t0;
    res.component.dt = x.dt;
    res.component.samples.resize(n);
    res.residual.t0 = x.t0;
    res.residual.dt = x.dt;
    res.residual.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        res.component.samples[i] = envelope[i] * std::cos(phi_total[i]);
        res.residual.samples[i] = x.samples[i] - res.component.samples[i];
    }
    res.envelope = std::move(envelope);
    res.phase = std::move(phi_total);
    res.valid_begin = rec.valid_begin;
    res.valid_end = rec.valid_end;
    res.cutoff_hz = cutoff;
    return res;
}

double snr_estimate(const TimeSeries& x, const TimeSeries& component) {
    if (x.size() != component.size())
        throw data_error("snr_estimate: length mismatch");
    if (x.samples.empty()) throw data_error("snr_estimate: empty series");

    double p_comp = 0.0, p_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = component.samples[i];
        const double r = x.samples[i] - c;
        p_comp += c * c;
        p_res += r * r;
    }
    if (p_res == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p_comp / p_res);
}

}  // namespace modalid
