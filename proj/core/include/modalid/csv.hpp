#pragma once

#include <string>
#include <vector>

#include "modalid/backbone.hpp"
#include "modalid/identify.hpp"
#include "modalid/oracles.hpp"
#include "modalid/time_series.hpp"

namespace modalid {

/// `t,value` rows; t must advance on a uniform grid.
TimeSeries read_time_series_csv(const std::string& path);
void write_time_series_csv(const std::string& path, const TimeSeries& ts);

/// `t,amplitude,T2,chi,omega_n,h,valid`
ModalTrajectory read_modal_csv(const std::string& path);
void write_modal_csv(const std::string& path, const ModalTrajectory& traj);

/// `amplitude,omega_n,h,n_samples`
BackboneCurve read_backbone_csv(const std::string& path);
void write_backbone_csv(const std::string& path, const BackboneCurve& curve);

/// `amplitude,omega_n`
std::vector<BackboneSample> read_backbone_samples_csv(const std::string& path);
void write_backbone_samples_csv(const std::string& path,
                                const std::vector<BackboneSample>& samples);

}  // namespace modalid
