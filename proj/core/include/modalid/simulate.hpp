#pragma once

#include <cstdint>
#include <vector>

#include "modalid/time_series.hpp"

namespace modalid {

/// Oscillator with position-dependent inertia: (m + beta*y^2) y'' + k y = x.
struct SimpleOscillatorParams {
    double m = 1.0;     ///< kg
    double beta = 0.0;  ///< kg/m^2
    double k = 1.0;     ///< N/m

    double epsilon() const { return beta / m; }
    double omega0() const;  ///< sqrt(k/m), rad/s
};

/// Series RLC with a current-saturating inductor.
struct RlcParams {
    double L_nom = 498e-6;  ///< H, low-current inductance
    double L_ds = 100e-6;   ///< H, deep-saturation inductance
    double i_star = 0.7;    ///< A, transition center
    double sigma = 100.0;   ///< 1/A, transition steepness
    double C = 9e-6;        ///< F
    double R = 1.25;        ///< ohm

    double f_nom() const;  ///< 1/(2*pi*sqrt(L_nom*C)), Hz
    double f_ds() const;   ///< 1/(2*pi*sqrt(L_ds*C)), Hz
};

/// Two masses with a frictional interface; m1 is sprung and forced, m2 rides
/// on m1 and couples through Coulomb friction.
struct StickSlipParams {
    double m1 = 1.0;        ///< kg
    double m2 = 0.5;        ///< kg
    double k = 1.0;         ///< N/m, spring to ground on m1
    double c = 0.0;         ///< N*s/m, dashpot to ground on m1
    double mu = 0.2;        ///< friction coefficient
    double g = 9.81;        ///< m/s^2
    double vel_tol = 1e-6;  ///< m/s, stick re-entry velocity tolerance

    double f_stick() const;  ///< sqrt(k/(m1+m2))/(2*pi), Hz
    double f_slip() const;   ///< sqrt(k/m1)/(2*pi), Hz
};

/// Rig with f_stick = 10 Hz, ~1% stick-regime damping ratio.
StickSlipParams default_stick_slip_params();

/// Constant-amplitude linear swept sine.
struct ChirpParams {
    double amplitude = 1.0;
    double f1 = 1.0;        ///< Hz at t = 0
    double f2 = 2.0;        ///< Hz at t = duration
    double duration = 1.0;  ///< s
    double fs = 100.0;      ///< Hz
};

/// x(t) = A sin(2*pi*f1*t + 2*pi*(f2-f1) t^2 / (2*duration)).
/// Throws config_error when fs <= 2*f2 (aliasing) or parameters are invalid.
TimeSeries chirp(const ChirpParams& p);

/// Fixed-step RK4, `substeps` integration steps per excitation sample.
/// Throws numeric_error when |y| exceeds 1e12.
TimeSeries simulate_simple(const SimpleOscillatorParams& p, const TimeSeries& x,
                           double y0, double v0, int substeps = 4);

/// L(i) = L_ds + (L_nom - L_ds)/2 * (1 - (2/pi) atan(sigma*(i - i_star))).
double inductance(double i, const RlcParams& p);

struct RlcResponse {
    TimeSeries charge;   ///< q(t), C
    TimeSeries current;  ///< i(t) = dq/dt, A; the response channel
};

/// Integrates L(i) q'' + R q' + q/C = e(t) from (q0, i0).
RlcResponse simulate_rlc(const RlcParams& p, const TimeSeries& e, double q0, double i0,
                         int substeps = 4);

struct StickSlipState {
    double x1 = 0.0, v1 = 0.0, x2 = 0.0, v2 = 0.0;
};

struct StickSlipResponse {
    TimeSeries x1;                   ///< sprung mass position; response channel
    TimeSeries x2;                   ///< riding mass position
    std::vector<std::uint8_t> stick; ///< true while the masses move as one body
    std::vector<double> friction;    ///< interface force f per sample
    std::vector<double> lambda;      ///< constraint force that full stick would need
};

/// Constrained two-mass integration. Every substep the stick constraint force
/// lambda = m2 (c v1 + k x1 - F) / (m1 + m2) is evaluated; while |lambda| stays
/// within mu*m2*g and the relative velocity within vel_tol the interface
/// transmits lambda, otherwise it saturates at mu*m2*g with the sliding sign.
StickSlipResponse simulate_stick_slip(const StickSlipParams& p, const TimeSeries& F,
                                      const StickSlipState& s0 = {}, int substeps = 4);

/// Additive white Gaussian noise at the requested SNR against the mean-square
/// signal power; deterministic per seed. An infinite snr_db returns the input.
TimeSeries add_noise(const TimeSeries& x, double snr_db, std::uint64_t seed);

}  // namespace modalid
