#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modalid/signal.hpp"

namespace modalid {

/// Per-sample line-fit coordinates for constant-stiffness estimation.
/// With D = d2y*d1H[y] - d1y*d2H[y]:
///   g = (H[y]*d1y - y*d1H[y]) / D        [s^2]
///   s = (x*d1H[y] - H[x]*d1y) / D        [s^2 * input/response]
/// and g = -(1/k) s + T^2 holds wherever T^2 is locally constant.
struct GsSeries {
    std::vector<double> g;
    std::vector<double> s;
    std::vector<double> den_mag;   ///< |D| per sample, for diagnostics
    std::vector<std::uint8_t> valid;

    std::size_t size() const { return g.size(); }
};

GsSeries compute_g_s(const AnalyticRecord& x, const AnalyticRecord& y,
                     double den_eps = 1e-3);

/// Result of the multi-window orthogonal line fit for the stiffness k.
struct StiffnessFit {
    double k = 0.0;
    int window_count = 0;
    int window_length = 0;
    double objective = 0.0;                    ///< summed squared orthogonal distances
    std::vector<double> per_window_intercepts; ///< T^2 per window
};

/// Fits one slope -1/k across many short windows of (s, g) samples. Within
/// each window g and s are mean-centered so only the slope is shared; the
/// summed squared orthogonal point-line distances are minimized over k by
/// golden-section search seeded and bracketed by the ordinary least-squares
/// slope. Windows whose s values do not vary are skipped; if none remain an
/// insufficient-excitation error is thrown.
StiffnessFit estimate_stiffness(const GsSeries& gs, int window_length, int stride);

/// Per-sample modal parameter estimates.
struct ModalTrajectory {
    std::vector<double> t;
    std::vector<double> amplitude;  ///< response envelope
    std::vector<double> T2;         ///< m(A)/k, s^2
    std::vector<double> chi;        ///< c(A)/(2k), s
    std::vector<double> omega_n;    ///< 1/sqrt(T2), rad/s
    std::vector<double> h;          ///< chi/T2, 1/s
    std::vector<std::uint8_t> valid;

    std::size_t size() const { return t.size(); }
};

/// Stiffness-normalized identification for oscillators with
/// response-dependent inertia: per-sample T^2 and chi from the analytic
/// forms of excitation and response, converted to omega_n and h.
ModalTrajectory identify_forcevibmod(const AnalyticRecord& x, const AnalyticRecord& y,
                                     double k, double den_eps = 1e-3);

/// Mass-normalized baseline for constant-inertia systems, provided for
/// cross-validation against identify_forcevibmod.
ModalTrajectory identify_forcevib(const AnalyticRecord& x, const AnalyticRecord& y,
                                  double m, double den_eps = 1e-3);

/// Invalidates samples whose envelope varies rapidly, |dA/dt|/A above the
/// threshold. A threshold <= 0 selects 0.05 * median(omega_n) over currently
/// valid samples.
ModalTrajectory trim_transients(const ModalTrajectory& traj, double rate_threshold = 0.0);

}  // namespace modalid
