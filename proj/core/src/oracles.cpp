#include "modalid/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modalid/errors.hpp"

namespace modalid {

namespace {
constexpr double two_pi = 6.28318530717958647692;

struct Crossings {
    std::vector<double> times;
};

Crossings zero_crossings(const TimeSeries& y) {
    Crossings c;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const double a = y.samples[i], b = y.samples[i + 1];
        if (a * b < 0.0)
            c.times.push_back(y.time_at(i) + y.dt * a / (a - b));
    }
    return c;
}

double refined_peak(const TimeSeries& y, std::size_t j) {
    if (j == 0 || j + 1 >= y.size()) return std::abs(y.samples[j]);
    const double a = y.samples[j - 1], b = y.samples[j], c = y.samples[j + 1];
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return std::abs(b);
    const double delta = 0.5 * (a - c) / denom;
    if (std::abs(delta) > 1.0) return std::abs(b);
    return std::abs(b - 0.25 * (a - c) * delta);
}

// Mean period and mean |peak| over up to 20 full cycles of the free response.
BackboneSample measure_cycles(const TimeSeries& y, const char* what) {
    const Crossings c = zero_crossings(y);
    if (c.times.size() < 3)
        throw data_error(std::string(what) +
                         ": too few zero crossings to measure a period");

    const std::size_t cycles = std::min<std::size_t>(20, (c.times.size() - 1) / 2);
    const double t_first = c.times.front();
    const double t_last = c.times[2 * cycles];
    const double period = (t_last - t_first) / static_cast<double>(cycles);

    // Per-half-cycle peak magnitudes between the used crossings.
    double amp_sum = 0.0;
    std::size_t amp_count = 0;
    std::size_t i = static_cast<std::size_t>(std::max(0.0, (t_first - y.t0) / y.dt)) + 1;
    for (std::size_t seg = 0; seg < 2 * cycles; ++seg) {
        const double t_end = c.times[seg + 1];
        double best = 0.0;
        std::size_t best_j = i;
        while (i < y.size() && y.time_at(i) < t_end) {
            if (std::abs(y.samples[i]) > best) {
                best = std::abs(y.samples[i]);
                best_j = i;
            }
            ++i;
        }
        if (best > 0.0) {
            amp_sum += refined_peak(y, best_j);
            ++amp_count;
        }
    }

    BackboneSample s;
    s.amplitude = amp_count ? amp_sum / static_cast<double>(amp_count) : 0.0;
    s.omega_n = two_pi / period;
    return s;
}

TimeSeries zero_series(double dt, std::size_t n) {
    TimeSeries z;
    z.t0 = 0.0;
    z.dt = dt;
    z.samples.assign(n, 0.0);
    return z;
}

BackboneSample free_period_simple(const SimpleOscillatorParams& p, double A0,
                                  double rate_multiplier) {
    const double f0 = p.omega0() / two_pi;
    // The oscillation slows with amplitude; bound the frequency from below by
    // the linear rate with the inertia frozen at its maximum.
    const double f_floor = f0 / std::sqrt(1.0 + p.epsilon() * A0 * A0);
    const double fs = 200.0 * f0 * rate_multiplier;
    const auto n = static_cast<std::size_t>(std::ceil(42.0 / f_floor * fs));
    const TimeSeries y = simulate_simple(p, zero_series(1.0 / fs, n), A0, 0.0);
    return measure_cycles(y, "free_oscillation_period(simple)");
}

BackboneSample free_period_rlc(const RlcParams& p, double A0, double rate_multiplier) {
    if (p.R != 0.0)
        throw config_error("free_oscillation_period: RLC system must have R = 0");
    const double fs = 200.0 * p.f_ds() * rate_multiplier;
    const auto n = static_cast<std::size_t>(std::ceil(25.0 / p.f_nom() * fs));
    const RlcResponse r = simulate_rlc(p, zero_series(1.0 / fs, n), 0.0, A0);
    return measure_cycles(r.current, "free_oscillation_period(rlc)");
}

}  // namespace

double lp_backbone_eval(const LpBackbone& b, double A) {
    if (b.order < 0 || b.order > 2)
        throw config_error("lp_backbone_eval: order must be 0, 1 or 2");
    const double u = b.epsilon * A * A;
    if (!(u < 1.0))
        throw numeric_error("lp_backbone_eval: eps*A^2 = " + std::to_string(u) +
                            " is outside the series' validity (< 1 required)");
    double factor = 1.0;
    if (b.order >= 1) factor += b.coefficients[0] * u;
    if (b.order >= 2) factor += b.coefficients[1] * u * u;
    return b.omega0 * factor;
}

BackboneSample free_oscillation_period(const SystemModel& system, double A0,
                                       double rate_multiplier) {
    if (!(A0 > 0.0))
        throw config_error("free_oscillation_period: initial amplitude must be positive");
    if (!(rate_multiplier >= 1.0))
        throw config_error("free_oscillation_period: rate_multiplier must be >= 1");
    return std::visit(
        [&](const auto& p) -> BackboneSample {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, SimpleOscillatorParams>)
                return free_period_simple(p, A0, rate_multiplier);
            else if constexpr (std::is_same_v<P, RlcParams>)
                return free_period_rlc(p, A0, rate_multiplier);
            else
                throw config_error(
                    "free_oscillation_period: the stick-slip system dissipates through "
                    "friction; no dissipation-free configuration exists");
        },
        system);
}

std::vector<BackboneSample> sweep_free_backbone(const SystemModel& system,
                                                const std::vector<double>& amplitudes) {
    if (amplitudes.empty())
        throw config_error("sweep_free_backbone: amplitude list is empty");
    std::vector<BackboneSample> samples;
    samples.reserve(amplitudes.size());
    for (const double a : amplitudes)
        samples.push_back(free_oscillation_period(system, a));
    std::sort(samples.begin(), samples.end(),
              [](const BackboneSample& a, const BackboneSample& b) {
                  return a.amplitude < b.amplitude;
              });
    return samples;
}

}  // namespace modalid
