#pragma once

#include <vector>

#include "modalid/identify.hpp"

namespace modalid {

/// Amplitude-sorted natural frequency / damping curve stitched from one or
/// more identification runs.
struct BackboneCurve {
    std::vector<double> amplitude;  ///< strictly increasing
    std::vector<double> omega_n;    ///< rad/s
    std::vector<double> h;          ///< 1/s
    std::vector<int> n_samples;     ///< contributing samples per point
    std::vector<std::vector<int>> source_run_ids;  ///< runs contributing per point

    std::size_t size() const { return amplitude.size(); }
};

/// Pools valid samples from all runs, sorts by amplitude and reduces them to
/// per-bin medians over log-spaced amplitude bins. bins == 0 disables binning
/// and returns the sorted samples themselves (exact amplitude ties merged).
BackboneCurve stitch_backbone(const std::vector<ModalTrajectory>& runs, int bins = 200);

}  // namespace modalid
