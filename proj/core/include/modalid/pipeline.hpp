#pragma once

#include <limits>
#include <vector>

#include "modalid/backbone.hpp"
#include "modalid/hvd.hpp"
#include "modalid/identify.hpp"
#include "modalid/time_series.hpp"

namespace modalid {

/// End-to-end identification settings.
struct PipelineConfig {
    HvdConfig hvd;
    int stiffness_window = 0;    ///< samples; <= 0 selects 5 response periods
    int stiffness_stride = 0;    ///< samples; <= 0 selects the window length
    double transient_rate_threshold = 0.0;  ///< 1/s; <= 0 selects 0.05*median(omega_n)
    double den_eps = 1e-3;       ///< denominator mask, fraction of median |D|
    /// Identify against the time derivative of the excitation channel. Used
    /// for systems whose response channel is the velocity-like variable (the
    /// RLC circuit measured by current).
    bool differentiate_excitation = false;
};

struct IdentifyResult {
    ModalTrajectory trajectory;  ///< transient-trimmed modal estimates
    StiffnessFit stiffness;
    double snr_excitation_db = std::numeric_limits<double>::infinity();
    double snr_response_db = std::numeric_limits<double>::infinity();
};

/// Full identification pipeline: largest-component extraction on both
/// channels, analytic forms, stiffness estimation, per-sample modal
/// parameters, transient trimming.
IdentifyResult run_identification(const TimeSeries& excitation,
                                  const TimeSeries& response,
                                  const PipelineConfig& cfg = {});

struct ScenarioSpec;  // scenario.hpp

/// Envelope-of-curves study: repeated identification under fresh noise
/// realizations, reduced to per-amplitude-bin min/median/max curves per SNR.
/// Bin edges are log-spaced over the clean run's amplitude range. Trials run
/// in parallel; results are deterministic for a fixed scenario seed.
struct NoiseStudyResult {
    std::vector<double> bin_amplitude;  ///< geometric bin centers
    std::vector<double> clean_omega;    ///< clean-run omega_n per bin (NaN if empty)
    struct PerSnr {
        double snr_db = 0.0;
        std::vector<double> omega_min;
        std::vector<double> omega_median;
        std::vector<double> omega_max;
        std::vector<int> trials;  ///< trials contributing per bin
    };
    std::vector<PerSnr> per_snr;
};

NoiseStudyResult run_noise_study(const ScenarioSpec& spec, const PipelineConfig& pipe,
                                 const std::vector<double>& snr_list, int trials,
                                 int bins = 200);

}  // namespace modalid
