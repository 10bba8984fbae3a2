#include "modalid/simulate.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "modalid/errors.hpp"

namespace modalid {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2.0 * pi;
constexpr double overflow_guard = 1e12;

// Classic RK4 step over state vector q with rhs f(t, q, dq).
template <std::size_t N, typename Rhs>
void rk4_step(Rhs&& rhs, double t, double dt, std::array<double, N>& q) {
    std::array<double, N> k1, k2, k3, k4, tmp;
    rhs(t, q, k1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = q[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = q[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = q[i] + dt * k3[i];
    rhs(t + dt, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
        q[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
}

void check_guard(double value, const char* what) {
    if (!std::isfinite(value) || std::abs(value) > overflow_guard)
        throw numeric_error(std::string(what) + ": solution diverged (overflow guard 1e12)");
}

}  // namespace

double SimpleOscillatorParams::omega0() const { return std::sqrt(k / m); }

double RlcParams::f_nom() const { return 1.0 / (two_pi * std::sqrt(L_nom * C)); }
double RlcParams::f_ds() const { return 1.0 / (two_pi * std::sqrt(L_ds * C)); }

double StickSlipParams::f_stick() const { return std::sqrt(k / (m1 + m2)) / two_pi; }
double StickSlipParams::f_slip() const { return std::sqrt(k / m1) / two_pi; }

StickSlipParams default_stick_slip_params() {
    StickSlipParams p;
    p.m1 = 1.0;
    p.m2 = 0.5;
    p.k = std::pow(two_pi * 10.0, 2) * (p.m1 + p.m2);   // f_stick = 10 Hz
    p.c = 2.0 * 0.01 * std::sqrt(p.k * (p.m1 + p.m2));  // zeta_stick ~ 1%
    p.mu = 0.2;
    p.g = 9.81;
    p.vel_tol = 1e-6;
    return p;
}

TimeSeries chirp(const ChirpParams& p) {
    if (!(p.f1 > 0.0) || !(p.f2 >= p.f1))
        throw config_error("chirp: need 0 < f1 <= f2");
    if (!(p.duration > 0.0) || !(p.fs > 0.0))
        throw config_error("chirp: duration and fs must be positive");
    if (p.fs <= 2.0 * p.f2)
        throw config_error("chirp: sample rate " + std::to_string(p.fs) +
                           " Hz aliases the " + std::to_string(p.f2) + " Hz endpoint");

    const auto n = static_cast<std::size_t>(std::llround(p.duration * p.fs));
    TimeSeries ts;
    ts.t0 = 0.0;
    ts.dt = 1.0 / p.fs;
    ts.samples.resize(n);
    const double rate = (p.f2 - p.f1) / p.duration;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = ts.dt * static_cast<double>(i);
        ts.samples[i] = p.amplitude * std::sin(two_pi * (p.f1 * t + 0.5 * rate * t * t));
    }
    return ts;
}

TimeSeries simulate_simple(const SimpleOscillatorParams& p, const TimeSeries& x,
                           double y0, double v0, int substeps) {
    if (!(p.m > 0.0) || !(p.k > 0.0) || p.beta < 0.0)
        throw config_error("simulate_simple: need m > 0, k > 0, beta >= 0");
    if (substeps < 1) throw config_error("simulate_simple: substeps must be >= 1");
    validate_time_series(x, 16, "simulate_simple excitation");

    const auto rhs = [&](double t, const std::array<double, 2>& q,
                         std::array<double, 2>& dq) {
        dq[0] = q[1];
        dq[1] = (sample_at(x, t) - p.k * q[0]) / (p.m + p.beta * q[0] * q[0]);
    };

    TimeSeries y;
    y.t0 = x.t0;
    y.dt = x.dt;
    y.samples.resize(x.size());
    std::array<double, 2> state{y0, v0};
    const double h = x.dt / substeps;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y.samples[i] = state[0];
        check_guard(state[0], "simulate_simple");
        if (i + 1 == x.size()) break;
        double t = x.time_at(i);
        for (int s = 0; s < substeps; ++s, t += h) rk4_step(rhs, t, h, state);
    }
    return y;
}

double inductance(double i, const RlcParams& p) {
    return p.L_ds +
           0.5 * (p.L_nom - p.L_ds) * (1.0 - (2.0 / pi) * std::atan(p.sigma * (i - p.i_star)));
}

RlcResponse simulate_rlc(const RlcParams& p, const TimeSeries& e, double q0, double i0,
                         int substeps) {
    if (!(p.L_nom > p.L_ds) || !(p.L_ds > 0.0))
        throw config_error("simulate_rlc: need L_nom > L_ds > 0");
    if (substeps < 1) throw config_error("simulate_rlc: substeps must be >= 1");
    if (!(p.C > 0.0) || p.R < 0.0 || !(p.sigma > 0.0))
        throw config_error("simulate_rlc: need C > 0, R >= 0, sigma > 0");
    validate_time_series(e, 16, "simulate_rlc excitation");

    const auto rhs = [&](double t, const std::array<double, 2>& q,
                         std::array<double, 2>& dq) {
        dq[0] = q[1];
        dq[1] = (sample_at(e, t) - p.R * q[1] - q[0] / p.C) / inductance(q[1], p);
    };

    RlcResponse out;
    out.charge.t0 = out.current.t0 = e.t0;
    out.charge.dt = out.current.dt = e.dt;
    out.charge.samples.resize(e.size());
    out.current.samples.resize(e.size());

    std::array<double, 2> state{q0, i0};
    const double h = e.dt / substeps;
    for (std::size_t i = 0; i < e.size(); ++i) {
        out.charge.samples[i] = state[0];
        out.current.samples[i] = state[1];
        check_guard(state[1], "simulate_rlc");
        if (i + 1 == e.size()) break;
        double t = e.time_at(i);
        for (int s = 0; s < substeps; ++s, t += h) rk4_step(rhs, t, h, state);
    }
    return out;
}

namespace {

struct FrictionLaw {
    const StickSlipParams& p;

    double lambda(double t, const std::array<double, 4>& q, const TimeSeries& F) const {
        // Force the interface must carry for the masses to move as one body.
        return p.m2 * (p.c * q[1] + p.k * q[0] - sample_at(F, t)) / (p.m1 + p.m2);
    }

    // Returns the interface force and whether the masses are stuck.
    std::pair<double, bool> force(double t, const std::array<double, 4>& q,
                                  const TimeSeries& F) const {
        const double lam = lambda(t, q, F);
        const double limit = p.mu * p.m2 * p.g;
        const double dv = q[3] - q[1];
        if (std::abs(dv) > p.vel_tol) {
            return {limit * (dv > 0.0 ? 1.0 : -1.0), false};  // sliding
        }
        if (std::abs(lam) > limit) {
            // Slip onset: saturate toward the force the constraint demands.
            return {limit * (lam > 0.0 ? 1.0 : lam < 0.0 ? -1.0 : 0.0), false};
        }
        return {lam, true};
    }
};

}  // namespace

StickSlipResponse simulate_stick_slip(const StickSlipParams& p, const TimeSeries& F,
                                      const StickSlipState& s0, int substeps) {
    if (!(p.m1 > 0.0) || !(p.m2 > 0.0) || !(p.k > 0.0))
        throw config_error("simulate_stick_slip: masses and stiffness must be positive");
    if (substeps < 1) throw config_error("simulate_stick_slip: substeps must be >= 1");
    if (p.mu < 0.0 || p.c < 0.0 || p.g < 0.0 || !(p.vel_tol > 0.0))
        throw config_error("simulate_stick_slip: need mu, c, g >= 0 and vel_tol > 0");
    validate_time_series(F, 16, "simulate_stick_slip excitation");

    const FrictionLaw law{p};
    const auto rhs = [&](double t, const std::array<double, 4>& q,
                         std::array<double, 4>& dq) {
        const double f = law.force(t, q, F).first;
        dq[0] = q[1];
        dq[1] = (sample_at(F, t) - p.c * q[1] - p.k * q[0] + f) / p.m1;
        dq[2] = q[3];
        dq[3] = -f / p.m2;
    };

    StickSlipResponse out;
    const std::size_t n = F.size();
    out.x1.t0 = out.x2.t0 = F.t0;
    out.x1.dt = out.x2.dt = F.dt;
    out.x1.samples.resize(n);
    out.x2.samples.resize(n);
    out.stick.resize(n);
    out.friction.resize(n);
    out.lambda.resize(n);

    std::array<double, 4> state{s0.x1, s0.v1, s0.x2, s0.v2};
    const double h = F.dt / substeps;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = F.time_at(i);
        const auto [f, stuck] = law.force(t, state, F);
        out.x1.samples[i] = state[0];
        out.x2.samples[i] = state[2];
        out.friction[i] = f;
        out.lambda[i] = law.lambda(t, state, F);
        out.stick[i] = stuck ? 1 : 0;
        check_guard(state[0], "simulate_stick_slip");
        check_guard(state[2], "simulate_stick_slip");
        if (i + 1 == n) break;
        double ts = t;
        for (int s = 0; s < substeps; ++s, ts += h) rk4_step(rhs, ts, h, state);
    }
    return out;
}

TimeSeries add_noise(const TimeSeries& x, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db)) throw config_error("add_noise: snr_db must not be NaN");
    if (std::isinf(snr_db) && snr_db > 0.0) return x;

    double power = 0.0;
    for (const double v : x.samples) power += v * v;
    power /= static_cast<double>(x.size());
    const double noise_std = std::sqrt(power / std::pow(10.0, snr_db / 10.0));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_std);
    TimeSeries out = x;
    for (auto& v : out.samples) v += gauss(rng);
    return out;
}

}  // namespace modalid
