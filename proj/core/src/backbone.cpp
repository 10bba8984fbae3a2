#include "modalid/backbone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "modalid/errors.hpp"

namespace modalid {

namespace {

struct Point {
    double amplitude;
    double omega_n;
    double h;
    int run;
};

double median_field(std::vector<double>& v) {
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        const auto lower = std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        m = 0.5 * (m + *lower);
    }
    return m;
}

}  // namespace

BackboneCurve stitch_backbone(const std::vector<ModalTrajectory>& runs, int bins) {
    if (runs.empty()) throw data_error("stitch_backbone: no runs given");
    if (bins < 0) throw config_error("stitch_backbone: bins must be >= 0");

    std::vector<Point> points;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto& traj = runs[r];
        for (std::size_t i = 0; i < traj.size(); ++i) {
            if (!traj.valid[i]) continue;
            if (!(traj.amplitude[i] > 0.0)) continue;
            points.push_back({traj.amplitude[i], traj.omega_n[i], traj.h[i],
                              static_cast<int>(r)});
        }
    }
    if (points.empty())
        throw data_error("stitch_backbone: no valid samples in any run");

    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.amplitude < b.amplitude; });

    BackboneCurve curve;
    const double a_min = points.front().amplitude;
    const double a_max = points.back().amplitude;

    if (bins == 0 || a_max <= a_min) {
        // Sorted copy; exact amplitude ties merged to keep amplitudes strictly
        // increasing.
        std::size_t i = 0;
        while (i < points.size()) {
            std::size_t j = i;
            double sum_w = 0.0, sum_h = 0.0;
            std::set<int> ids;
            while (j < points.size() && points[j].amplitude == points[i].amplitude) {
                sum_w += points[j].omega_n;
                sum_h += points[j].h;
                ids.insert(points[j].run);
                ++j;
            }
            const double cnt = static_cast<double>(j - i);
            curve.amplitude.push_back(points[i].amplitude);
            curve.omega_n.push_back(sum_w / cnt);
            curve.h.push_back(sum_h / cnt);
            curve.n_samples.push_back(static_cast<int>(j - i));
            curve.source_run_ids.emplace_back(ids.begin(), ids.end());
            i = j;
        }
        return curve;
    }

    const double log_lo = std::log(a_min);
    const double log_hi = std::log(a_max);
    const double width = (log_hi - log_lo) / bins;

    std::size_t i = 0;
    for (int b = 0; b < bins && i < points.size(); ++b) {
        const double hi = (b + 1 == bins) ? a_max : std::exp(log_lo + width * (b + 1));
        std::vector<double> amps, omegas, hs;
        std::set<int> ids;
        while (i < points.size() && (points[i].amplitude <= hi || b + 1 == bins)) {
            amps.push_back(points[i].amplitude);
            omegas.push_back(points[i].omega_n);
            hs.push_back(points[i].h);
            ids.insert(points[i].run);
            ++i;
        }
        if (amps.empty()) continue;
        curve.amplitude.push_back(median_field(amps));
        curve.omega_n.push_back(median_field(omegas));
        curve.h.push_back(median_field(hs));
        curve.n_samples.push_back(static_cast<int>(amps.size()));
        curve.source_run_ids.emplace_back(ids.begin(), ids.end());
    }

    // Median bin amplitudes can tie across sparse bins; enforce strict order.
    for (std::size_t p = 1; p < curve.amplitude.size(); ++p) {
        if (curve.amplitude[p] <= curve.amplitude[p - 1])
            curve.amplitude[p] = std::nextafter(curve.amplitude[p - 1],
                                                std::numeric_limits<double>::infinity());
    }
    return curve;
}

}  // namespace modalid
