#include "modalid/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "modalid/errors.hpp"

namespace modalid {

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

void require_records_aligned(const AnalyticRecord& x, const AnalyticRecord& y,
                             const char* context) {
    require_aligned(x.base, y.base, context);
}

// Samples where |D| falls below den_eps times the median |D| are unusable:
// both identification formulas divide by D.
std::vector<std::uint8_t> denominator_mask(const std::vector<double>& den_mag,
                                           double den_eps) {
    const double med = median_of(den_mag);
    const double floor = den_eps * med;
    std::vector<std::uint8_t> valid(den_mag.size());
    for (std::size_t i = 0; i < den_mag.size(); ++i)
        valid[i] = (den_mag[i] > floor && std::isfinite(den_mag[i])) ? 1 : 0;
    return valid;
}

}  // namespace

GsSeries compute_g_s(const AnalyticRecord& x, const AnalyticRecord& y, double den_eps) {
    require_records_aligned(x, y, "compute_g_s");
    const std::size_t n = y.size();

    GsSeries gs;
    gs.g.resize(n);
    gs.s.resize(n);
    gs.den_mag.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double den = y.d2[i] * y.d1_h[i] - y.d1[i] * y.d2_h[i];
        gs.den_mag[i] = std::abs(den);
        gs.g[i] = (y.hilbert[i] * y.d1[i] - y.base.samples[i] * y.d1_h[i]) / den;
        gs.s[i] = (x.base.samples[i] * y.d1_h[i] - x.hilbert[i] * y.d1[i]) / den;
    }
    gs.valid = denominator_mask(gs.den_mag, den_eps);
    // Edge-trimmed samples are unreliable for fitting.
    for (std::size_t i = 0; i < n; ++i)
        if (i < y.valid_begin || i >= y.valid_end) gs.valid[i] = 0;
    return gs;
}

namespace {

struct Window {
    std::vector<double> gc;  // mean-centered g
    std::vector<double> sc;  // mean-centered s
    double g_mean = 0.0;
    double s_mean = 0.0;
};

// Sum of squared orthogonal distances from the centered points to the line
// g = -(1/k) s through the window centroid.
double objective(const std::vector<Window>& windows, double k) {
    const double slope = -1.0 / k;
    const double inv_norm2 = 1.0 / (1.0 + slope * slope);
    double total = 0.0;
    for (const auto& w : windows) {
        double sum = 0.0;
        for (std::size_t j = 0; j < w.gc.size(); ++j) {
            const double d = w.gc[j] - slope * w.sc[j];
            sum += d * d;
        }
        total += sum * inv_norm2;
    }
    return total;
}

}  // namespace

StiffnessFit estimate_stiffness(const GsSeries& gs, int window_length, int stride) {
    if (window_length < 4)
        throw config_error("estimate_stiffness: window_length must be >= 4");
    if (stride < 1) throw config_error("estimate_stiffness: stride must be >= 1");
    const std::size_t n = gs.size();
    if (gs.s.size() != n || gs.valid.size() != n)
        throw data_error("estimate_stiffness: inconsistent GsSeries");

    // Collect windows of fully valid samples; a window is degenerate when its
    // s values barely vary (constant response frequency carries no slope
    // information).
    std::vector<Window> windows;
    double pooled_sg = 0.0, pooled_ss = 0.0;
    for (std::size_t start = 0; start + static_cast<std::size_t>(window_length) <= n;
         start += static_cast<std::size_t>(stride)) {
        const std::size_t stop = start + static_cast<std::size_t>(window_length);
        bool ok = true;
        for (std::size_t i = start; i < stop; ++i)
            if (!gs.valid[i]) { ok = false; break; }
        if (!ok) continue;

        Window w;
        w.gc.reserve(static_cast<std::size_t>(window_length));
        w.sc.reserve(static_cast<std::size_t>(window_length));
        double gm = 0.0, sm = 0.0;
        for (std::size_t i = start; i < stop; ++i) {
            gm += gs.g[i];
            sm += gs.s[i];
        }
        gm /= window_length;
        sm /= window_length;
        w.g_mean = gm;
        w.s_mean = sm;
        double var_s = 0.0, scale_s = 0.0;
        for (std::size_t i = start; i < stop; ++i) {
            const double gc = gs.g[i] - gm;
            const double sc = gs.s[i] - sm;
            w.gc.push_back(gc);
            w.sc.push_back(sc);
            var_s += sc * sc;
            scale_s += gs.s[i] * gs.s[i];
        }
        if (var_s <= 1e-20 * std::max(scale_s, 1e-300)) continue;  // degenerate
        pooled_sg += std::inner_product(w.sc.begin(), w.sc.end(), w.gc.begin(), 0.0);
        pooled_ss += var_s;
        windows.push_back(std::move(w));
    }

    if (windows.size() < 2)
        throw numeric_error(
            "estimate_stiffness: insufficient excitation - fewer than two windows with "
            "varying response frequency; use a frequency-varying excitation (e.g. a swept sine)");

    const double slope_ls = pooled_sg / pooled_ss;
    if (!(slope_ls < 0.0))
        throw numeric_error("estimate_stiffness: least-squares seed gave a non-negative "
                            "slope; data are inconsistent with a positive stiffness");
    const double k_seed = -1.0 / slope_ls;

    // Golden-section search on J(k) over [k_seed/10, 10*k_seed].
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = k_seed / 10.0, hi = k_seed * 10.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = objective(windows, x1);
    double f2 = objective(windows, x2);
    while (hi - lo > 1e-10 * std::max(std::abs(lo), std::abs(hi))) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(windows, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(windows, x2);
        }
    }
    const double k = 0.5 * (lo + hi);

    StiffnessFit fit;
    fit.k = k;
    fit.window_count = static_cast<int>(windows.size());
    fit.window_length = window_length;
    fit.objective = objective(windows, k);
    fit.per_window_intercepts.reserve(windows.size());
    for (const auto& w : windows)
        fit.per_window_intercepts.push_back(w.g_mean + w.s_mean / k);
    return fit;
}

namespace {

ModalTrajectory finalize_trajectory(const AnalyticRecord& y, std::vector<double> T2,
                                    std::vector<double> chi, std::vector<std::uint8_t> valid) {
    const std::size_t n = y.size();
    ModalTrajectory traj;
    traj.t.resize(n);
    traj.amplitude = y.envelope;
    traj.T2 = std::move(T2);
    traj.chi = std::move(chi);
    traj.omega_n.assign(n, 0.0);
    traj.h.assign(n, 0.0);
    traj.valid = std::move(valid);
    for (std::size_t i = 0; i < n; ++i) {
        traj.t[i] = y.base.time_at(i);
        if (i < y.valid_begin || i >= y.valid_end) traj.valid[i] = 0;
        if (!(traj.T2[i] > 0.0) || !std::isfinite(traj.T2[i]) || !std::isfinite(traj.chi[i]))
            traj.valid[i] = 0;
        if (traj.valid[i]) {
            traj.omega_n[i] = 1.0 / std::sqrt(traj.T2[i]);
            traj.h[i] = traj.chi[i] / traj.T2[i];
        }
    }
    return traj;
}

}  // namespace

ModalTrajectory identify_forcevibmod(const AnalyticRecord& x, const AnalyticRecord& y,
                                     double k, double den_eps) {
    if (!(k > 0.0)) throw config_error("identify_forcevibmod: stiffness k must be positive");
    require_records_aligned(x, y, "identify_forcevibmod");
    const std::size_t n = y.size();

    std::vector<double> T2(n), chi(n), den_mag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double yy = y.base.samples[i], yh = y.hilbert[i];
        const double y1 = y.d1[i], y1h = y.d1_h[i];
        const double y2 = y.d2[i], y2h = y.d2_h[i];
        const double xx = x.base.samples[i], xh = x.hilbert[i];
        const double den = y2 * y1h - y1 * y2h;
        den_mag[i] = std::abs(den);
        T2[i] = (xx * y1h - xh * y1) / (k * den) + (yh * y1 - yy * y1h) / den;
        chi[i] = (xh * y2 - xx * y2h) / (2.0 * k * den) + (yy * y2h - yh * y2) / (2.0 * den);
    }
    return finalize_trajectory(y, std::move(T2), std::move(chi),
                               denominator_mask(den_mag, den_eps));
}

ModalTrajectory identify_forcevib(const AnalyticRecord& x, const AnalyticRecord& y,
                                  double m, double den_eps) {
    if (!(m > 0.0)) throw config_error("identify_forcevib: mass m must be positive");
    require_records_aligned(x, y, "identify_forcevib");
    const std::size_t n = y.size();

    // Mass-normalized solve of the analytic-form equations of motion:
    //   omega_n^2 = (x*y1h - xh*y1)/(m*D1) - (y2*y1h - y1*y2h)/D1
    //   2h        = (xh*y - x*yh)/(m*D1) - (y*y2h - yh*y2)/D1
    // with D1 = y*y1h - y1*yh.
    std::vector<double> T2(n), chi(n), den_mag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double yy = y.base.samples[i], yh = y.hilbert[i];
        const double y1 = y.d1[i], y1h = y.d1_h[i];
        const double y2 = y.d2[i], y2h = y.d2_h[i];
        const double xx = x.base.samples[i], xh = x.hilbert[i];
        const double den = yy * y1h - y1 * yh;
        den_mag[i] = std::abs(den);
        const double omega_n2 = (xx * y1h - xh * y1) / (m * den) - (y2 * y1h - y1 * y2h) / den;
        const double two_h = (xh * yy - xx * yh) / (m * den) - (yy * y2h - yh * y2) / den;
        T2[i] = 1.0 / omega_n2;  // negative omega_n2 invalidated downstream
        chi[i] = 0.5 * two_h / omega_n2;
    }
    return finalize_trajectory(y, std::move(T2), std::move(chi),
                               denominator_mask(den_mag, den_eps));
}

ModalTrajectory trim_transients(const ModalTrajectory& traj, double rate_threshold) {
    const std::size_t n = traj.size();
    ModalTrajectory out = traj;
    if (n < 3) return out;
    const double dt = n >= 2 ? (traj.t[1] - traj.t[0]) : 1.0;

    double threshold = rate_threshold;
    if (threshold <= 0.0) {
        std::vector<double> omegas;
        omegas.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            if (traj.valid[i]) omegas.push_back(traj.omega_n[i]);
        threshold = 0.05 * median_of(std::move(omegas));
        if (threshold <= 0.0) return out;
    }

    const std::vector<double> rate = differentiate(traj.amplitude, dt);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(traj.amplitude[i]);
        if (a <= 0.0 || std::abs(rate[i]) > threshold * a) out.valid[i] = 0;
    }
    return out;
}

}  // namespace modalid
