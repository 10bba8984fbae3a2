#pragma once

#include <array>
#include <variant>
#include <vector>

#include "modalid/simulate.hpp"

namespace modalid {

/// Parameter record of any of the simulated case-study systems.
using SystemModel = std::variant<SimpleOscillatorParams, RlcParams, StickSlipParams>;

/// Truncated perturbation series for the nonlinear-inertia oscillator
/// backbone: omega(A) = omega0 * (1 + c1*(eps*A^2) + c2*(eps*A^2)^2).
struct LpBackbone {
    double omega0 = 1.0;   ///< rad/s
    double epsilon = 0.0;  ///< beta/m, 1/m^2
    int order = 2;         ///< 0, 1 or 2
    std::array<double, 2> coefficients{-3.0 / 8.0, 65.0 / 256.0};
};

/// Evaluates the series at amplitude A. Throws numeric_error when
/// eps*A^2 >= 1 (outside the series' validity).
double lp_backbone_eval(const LpBackbone& b, double A);

struct BackboneSample {
    double amplitude = 0.0;
    double omega_n = 0.0;  ///< rad/s
};

/// Natural frequency from an undamped free-response simulation started at
/// amplitude A0: the mean period over the first 20 cycles measured by
/// linearly interpolated zero crossings. The system must be dissipation-free
/// (c = 0 / R = 0); the stick-slip system is rejected (friction dissipates).
/// rate_multiplier scales the internal simulation rate (convergence checks).
BackboneSample free_oscillation_period(const SystemModel& system, double A0,
                                       double rate_multiplier = 1.0);

/// One backbone sample per requested initial amplitude, sorted by the
/// measured amplitude.
std::vector<BackboneSample> sweep_free_backbone(const SystemModel& system,
                                                const std::vector<double>& amplitudes);

}  // namespace modalid
