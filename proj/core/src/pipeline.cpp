#include "modalid/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "modalid/errors.hpp"
#include "modalid/scenario.hpp"
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

// |dA/dt|/A mask used to exclude ring-up and beating spans from the k fit.
void mask_fast_amplitude(GsSeries& gs, const AnalyticRecord& y, double threshold) {
    const std::vector<double> rate = differentiate(y.envelope, y.base.dt);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const double a = y.envelope[i];
        if (a <= 0.0 || std::abs(rate[i]) > threshold * a) gs.valid[i] = 0;
    }
}

}  // namespace

IdentifyResult run_identification(const TimeSeries& excitation,
                                  const TimeSeries& response,
                                  const PipelineConfig& cfg) {
    require_aligned(excitation, response, "run_identification");

    const HvdResult hy = hvd_largest_component(response, cfg.hvd);
    const HvdResult hx = hvd_largest_component(excitation, cfg.hvd);

    IdentifyResult result;
    result.snr_excitation_db = snr_estimate(excitation, hx.component);
    result.snr_response_db = snr_estimate(response, hy.component);

    TimeSeries x_channel = hx.component;
    if (cfg.differentiate_excitation)
        x_channel.samples = differentiate(x_channel.samples, x_channel.dt);

    const AnalyticRecord ax = make_analytic(x_channel, cfg.hvd.edge_trim_fraction);
    const AnalyticRecord ay = make_analytic(hy.component, cfg.hvd.edge_trim_fraction);

    // Median response frequency sets the default fit window (5 periods) and
    // the amplitude-rate threshold used before the trajectory exists.
    std::vector<double> interior(ay.inst_freq.begin() + static_cast<std::ptrdiff_t>(ay.valid_begin),
                                 ay.inst_freq.begin() + static_cast<std::ptrdiff_t>(ay.valid_end));
    const double omega_med = median_of(std::move(interior));
    if (!(omega_med > 0.0))
        throw numeric_error("run_identification: response carrier frequency estimate "
                            "is not positive");

    GsSeries gs = compute_g_s(ax, ay, cfg.den_eps);
    const double rate_threshold = cfg.transient_rate_threshold > 0.0
                                      ? cfg.transient_rate_threshold
                                      : 0.05 * omega_med;
    mask_fast_amplitude(gs, ay, rate_threshold);

    int window = cfg.stiffness_window;
    if (window <= 0) {
        const double period_samples = two_pi / (omega_med * response.dt);
        window = std::max(8, static_cast<int>(std::lround(5.0 * period_samples)));
    }
    const int stride = cfg.stiffness_stride > 0 ? cfg.stiffness_stride : window;

    result.stiffness = estimate_stiffness(gs, window, stride);

    ModalTrajectory traj = identify_forcevibmod(ax, ay, result.stiffness.k, cfg.den_eps);
    result.trajectory = trim_transients(traj, cfg.transient_rate_threshold);
    return result;
}

namespace {

struct BinGrid {
    std::vector<double> edges;  // size bins+1
    std::vector<double> centers;

    int locate(double a) const {
        if (!(a >= edges.front()) || !(a <= edges.back())) return -1;
        const auto it = std::upper_bound(edges.begin(), edges.end(), a);
        int idx = static_cast<int>(it - edges.begin()) - 1;
        if (idx == static_cast<int>(centers.size())) --idx;  // a == last edge
        return idx;
    }
};

BinGrid make_grid(double a_min, double a_max, int bins) {
    BinGrid grid;
    const double lo = std::log(a_min), hi = std::log(a_max);
    grid.edges.resize(static_cast<std::size_t>(bins) + 1);
    grid.centers.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b <= bins; ++b)
        grid.edges[static_cast<std::size_t>(b)] = std::exp(lo + (hi - lo) * b / bins);
    for (int b = 0; b < bins; ++b)
        grid.centers[static_cast<std::size_t>(b)] =
            std::sqrt(grid.edges[static_cast<std::size_t>(b)] *
                      grid.edges[static_cast<std::size_t>(b) + 1]);
    return grid;
}

// Per-bin median omega_n of one trajectory on a fixed grid; NaN for empty bins.
std::vector<double> bin_trajectory(const ModalTrajectory& traj, const BinGrid& grid) {
    std::vector<std::vector<double>> buckets(grid.centers.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!traj.valid[i] || !(traj.amplitude[i] > 0.0)) continue;
        const int b = grid.locate(traj.amplitude[i]);
        if (b >= 0) buckets[static_cast<std::size_t>(b)].push_back(traj.omega_n[i]);
    }
    std::vector<double> medians(grid.centers.size(),
                                std::numeric_limits<double>::quiet_NaN());
    for (std::size_t b = 0; b < buckets.size(); ++b)
        if (!buckets[b].empty()) medians[b] = median_of(std::move(buckets[b]));
    return medians;
}

}  // namespace

NoiseStudyResult run_noise_study(const ScenarioSpec& spec, const PipelineConfig& pipe,
                                 const std::vector<double>& snr_list, int trials,
                                 int bins) {
    if (trials < 2) throw config_error("run_noise_study: trials must be >= 2");
    if (bins < 2) throw config_error("run_noise_study: bins must be >= 2");

    // Clean reference run.
    ScenarioSpec clean = spec;
    clean.snr_db = std::numeric_limits<double>::infinity();
    const ScenarioRun base = run_scenario(clean);
    const IdentifyResult clean_result =
        run_identification(base.excitation, base.response, pipe);

    double a_min = std::numeric_limits<double>::infinity(), a_max = 0.0;
    for (std::size_t i = 0; i < clean_result.trajectory.size(); ++i) {
        if (!clean_result.trajectory.valid[i]) continue;
        const double a = clean_result.trajectory.amplitude[i];
        if (a > 0.0) {
            a_min = std::min(a_min, a);
            a_max = std::max(a_max, a);
        }
    }
    if (!(a_max > a_min))
        throw numeric_error("run_noise_study: clean run produced no valid samples");

    const BinGrid grid = make_grid(a_min, a_max, bins);

    NoiseStudyResult result;
    result.bin_amplitude = grid.centers;
    result.clean_omega = bin_trajectory(clean_result.trajectory, grid);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t si = 0; si < snr_list.size(); ++si) {
        const double snr = snr_list[si];
        std::vector<std::vector<double>> curves(static_cast<std::size_t>(trials));

        // Trials are independent; batch them to bound concurrent memory use.
        for (int t0 = 0; t0 < trials; t0 += static_cast<int>(hw)) {
            const int t1 = std::min(trials, t0 + static_cast<int>(hw));
            std::vector<std::future<std::vector<double>>> futures;
            futures.reserve(static_cast<std::size_t>(t1 - t0));
            for (int t = t0; t < t1; ++t) {
                futures.push_back(std::async(std::launch::async, [&, t]() {
                    const std::uint64_t sx =
                        seed_stream(spec.seed, 1000003ULL * (si + 1) + 2ULL * t);
                    const std::uint64_t sy =
                        seed_stream(spec.seed, 1000003ULL * (si + 1) + 2ULL * t + 1);
                    const ScenarioRun run = run_scenario_with_noise(clean, snr, sx, sy);
                    const IdentifyResult ident =
                        run_identification(run.excitation, run.response, pipe);
                    return bin_trajectory(ident.trajectory, grid);
                }));
            }
            for (int t = t0; t < t1; ++t)
                curves[static_cast<std::size_t>(t)] = futures[static_cast<std::size_t>(t - t0)].get();
        }

        NoiseStudyResult::PerSnr per;
        per.snr_db = snr;
        per.omega_min.assign(grid.centers.size(), std::numeric_limits<double>::quiet_NaN());
        per.omega_median.assign(grid.centers.size(), std::numeric_limits<double>::quiet_NaN());
        per.omega_max.assign(grid.centers.size(), std::numeric_limits<double>::quiet_NaN());
        per.trials.assign(grid.centers.size(), 0);
        for (std::size_t b = 0; b < grid.centers.size(); ++b) {
            std::vector<double> vals;
            vals.reserve(static_cast<std::size_t>(trials));
            for (const auto& c : curves)
                if (!std::isnan(c[b])) vals.push_back(c[b]);
            if (vals.empty()) continue;
            per.trials[b] = static_cast<int>(vals.size());
            per.omega_min[b] = *std::min_element(vals.begin(), vals.end());
            per.omega_max[b] = *std::max_element(vals.begin(), vals.end());
            per.omega_median[b] = median_of(std::move(vals));
        }
        result.per_snr.push_back(std::move(per));
    }
    return result;
}

}  // namespace modalid
