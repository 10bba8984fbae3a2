#include <doctest.h>

#include <cmath>

#include "modalid/errors.hpp"
#include "modalid/identify.hpp"
#include "modalid/signal.hpp"
#include "modalid/simulate.hpp"
#include "test_util.hpp"

using namespace modalid;
using namespace testutil;

namespace {

TimeSeries zeros_like(const TimeSeries& x) {
    TimeSeries z = x;
    std::fill(z.samples.begin(), z.samples.end(), 0.0);
    return z;
}

TimeSeries table2_chirp(double fs = 2000.0, double duration = 10.0) {
    ChirpParams p{1e3, 20.0, 40.0, duration, fs};
    return chirp(p);
}

}  // namespace

TEST_CASE("g of a free undamped response equals 1/omega^2") {
    // y = A cos(omega0 t), x = 0: numerator -A^2 w, denominator -A^2 w^3.
    const double omega0 = two_pi * 30.0;
    const SimpleOscillatorParams p{1.0, 0.0, omega0 * omega0};
    TimeSeries x = zeros_like(table2_chirp(4000.0, 4.0));
    const TimeSeries y = simulate_simple(p, x, 0.5, 0.0);

    const AnalyticRecord ax = make_analytic(x);
    const AnalyticRecord ay = make_analytic(y);
    const GsSeries gs = compute_g_s(ax, ay);

    const double T2 = 1.0 / (omega0 * omega0);
    std::size_t checked = 0;
    for (std::size_t i = gs.size() / 5; i < gs.size() - gs.size() / 5; ++i) {
        if (!gs.valid[i]) continue;
        CHECK(gs.g[i] == doctest::Approx(T2).epsilon(0.01));
        CHECK(std::abs(gs.s[i]) < 1e-6 * T2);
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("g of a constant tone equals 1/omega^2") {
    const TimeSeries y = tone(2.5, 25.0, 0.7, 2000.0, 4.0);
    const TimeSeries x = zeros_like(y);
    const GsSeries gs = compute_g_s(make_analytic(x), make_analytic(y));
    const double expect = 1.0 / std::pow(two_pi * 25.0, 2);
    std::vector<double> g_mid;
    for (std::size_t i = gs.size() / 5; i < gs.size() - gs.size() / 5; ++i)
        if (gs.valid[i]) g_mid.push_back(gs.g[i]);
    CHECK(median(g_mid) == doctest::Approx(expect).epsilon(0.005));
}

TEST_CASE("g + s/k is constant for a linear oscillator under chirp") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    const TimeSeries x = table2_chirp();
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
    const GsSeries gs = compute_g_s(make_analytic(x), make_analytic(y));

    std::vector<double> t2;
    for (std::size_t i = gs.size() / 5; i < gs.size() - gs.size() / 5; ++i)
        if (gs.valid[i]) t2.push_back(gs.g[i] + gs.s[i] / k);
    CHECK(median(t2) == doctest::Approx(m / k).epsilon(0.01));
}

TEST_CASE("compute_g_s rejects misaligned records") {
    const TimeSeries a = tone(1.0, 20.0, 0.0, 1000.0, 2.0);
    TimeSeries b = a;
    b.dt *= 2.0;
    CHECK_THROWS_AS(compute_g_s(make_analytic(a), make_analytic(b)), data_error);
}

TEST_CASE("estimate_stiffness recovers an exact line to 1e-9") {
    // g = -s/1000 + 2e-4 with s spanning a decade.
    GsSeries gs;
    const std::size_t n = 2000;
    for (std::size_t i = 0; i < n; ++i) {
        // Oscillate s within each window so every window carries slope info.
        const double base = 0.02 + 0.18 * static_cast<double>(i) / n;
        const double s = base * (1.0 + 0.3 * std::sin(0.37 * static_cast<double>(i)));
        gs.s.push_back(s);
        gs.g.push_back(-s / 1000.0 + 2e-4);
        gs.den_mag.push_back(1.0);
        gs.valid.push_back(1);
    }
    const StiffnessFit fit = estimate_stiffness(gs, 100, 100);
    CHECK(std::abs(fit.k - 1000.0) / 1000.0 < 1e-9);
    CHECK(fit.window_count == 20);
    for (const double t2 : fit.per_window_intercepts)
        CHECK(t2 == doctest::Approx(2e-4).epsilon(1e-9));
    CHECK(fit.objective < 1e-20);
}

TEST_CASE("estimate_stiffness needs frequency variation") {
    GsSeries gs;
    for (std::size_t i = 0; i < 1000; ++i) {
        gs.s.push_back(0.05);  // constant: no spread inside any window
        gs.g.push_back(2e-4 - 0.05 / 1000.0);
        gs.den_mag.push_back(1.0);
        gs.valid.push_back(1);
    }
    CHECK_THROWS_WITH_AS(estimate_stiffness(gs, 100, 100),
                         doctest::Contains("insufficient excitation"), numeric_error);
}

TEST_CASE("stiffness of the linear benchmark comes out within 0.5%") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    const TimeSeries x = table2_chirp();
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
    const AnalyticRecord ax = make_analytic(x);
    const AnalyticRecord ay = make_analytic(y);
    GsSeries gs = compute_g_s(ax, ay);

    // Exclude rapidly varying amplitude spans (onset ring-up, post-resonance
    // beating) before fitting, as the pipeline does.
    const std::vector<double> rate = differentiate(ay.envelope, y.dt);
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (std::abs(rate[i]) > 0.05 * two_pi * 30.0 * ay.envelope[i]) gs.valid[i] = 0;

    // 5 periods at the 30 Hz median response frequency, 2 kHz sampling.
    const StiffnessFit fit = estimate_stiffness(gs, 333, 333);
    CHECK(fit.k == doctest::Approx(k).epsilon(0.005));
}

TEST_CASE("identify_forcevibmod matches the linear benchmark") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    const TimeSeries x = table2_chirp();
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
    const AnalyticRecord ax = make_analytic(x);
    const AnalyticRecord ay = make_analytic(y);

    const ModalTrajectory traj = trim_transients(identify_forcevibmod(ax, ay, k));
    std::vector<double> t2s, hs;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!traj.valid[i]) continue;
        t2s.push_back(traj.T2[i]);
        hs.push_back(traj.h[i]);
    }
    CHECK(t2s.size() > 2000);
    CHECK(median(t2s) == doctest::Approx(m / k).epsilon(0.01));
    CHECK(median(hs) == doctest::Approx(c / (2.0 * m)).epsilon(0.10));
}

TEST_CASE("identify_forcevibmod flags zero damping") {
    const double m = 1.0, k = std::pow(two_pi * 30.0, 2);
    const TimeSeries x = table2_chirp();
    const TimeSeries y = simulate_linear_oscillator(m, 0.0, k, x);
    const ModalTrajectory traj =
        trim_transients(identify_forcevibmod(make_analytic(x), make_analytic(y), k));
    std::vector<double> ratios;
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.valid[i]) ratios.push_back(std::abs(traj.h[i]) / traj.omega_n[i]);
    CHECK(median(ratios) < 0.02);
}

TEST_CASE("identify_forcevibmod validates inputs") {
    const TimeSeries x = tone(1.0, 20.0, 0.0, 1000.0, 2.0);
    CHECK_THROWS_AS(identify_forcevibmod(make_analytic(x), make_analytic(x), -1.0),
                    config_error);
    CHECK_THROWS_AS(identify_forcevib(make_analytic(x), make_analytic(x), 0.0),
                    config_error);
}

TEST_CASE("forcevib and forcevibmod agree on a linear system") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    const TimeSeries x = table2_chirp();
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
    const AnalyticRecord ax = make_analytic(x);
    const AnalyticRecord ay = make_analytic(y);

    const ModalTrajectory a = trim_transients(identify_forcevibmod(ax, ay, k));
    const ModalTrajectory b = trim_transients(identify_forcevib(ax, ay, m));

    std::vector<double> dw, dh, wb, hb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.valid[i] || !b.valid[i]) continue;
        dw.push_back(std::abs(a.omega_n[i] - b.omega_n[i]) / b.omega_n[i]);
        dh.push_back(std::abs(a.h[i] - b.h[i]));
        wb.push_back(b.omega_n[i]);
        hb.push_back(b.h[i]);
    }
    CHECK(dw.size() > 2000);
    CHECK(median(dw) < 0.005);
    CHECK(median(dh) < 0.05 * c / (2.0 * m));
    // Both match the analytic values.
    CHECK(median(wb) == doctest::Approx(std::sqrt(k / m)).epsilon(0.01));
    CHECK(median(hb) == doctest::Approx(c / (2.0 * m)).epsilon(0.10));
}

TEST_CASE("forcevib on a free decay matches the undamped oracle") {
    const double m = 1.0, c = 0.4, k = std::pow(two_pi * 30.0, 2);  // zeta ~ 0.1%
    TimeSeries x = zeros_like(table2_chirp(2000.0, 6.0));
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x, 0.8, 0.0);
    const ModalTrajectory traj =
        identify_forcevib(make_analytic(x), make_analytic(y), m);
    std::vector<double> w;
    for (std::size_t i = traj.size() / 5; i < traj.size() - traj.size() / 5; ++i)
        if (traj.valid[i]) w.push_back(traj.omega_n[i]);
    CHECK(median(w) == doctest::Approx(std::sqrt(k / m)).epsilon(0.01));
}

TEST_CASE("eq-2.3 consistency holds on every valid sample") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    const TimeSeries x = table2_chirp(2000.0, 4.0);
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
    const ModalTrajectory traj =
        identify_forcevibmod(make_analytic(x), make_analytic(y), k);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!traj.valid[i]) continue;
        CHECK(traj.omega_n[i] * traj.omega_n[i] * traj.T2[i] ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(traj.h[i] * traj.T2[i] == doctest::Approx(traj.chi[i]).epsilon(1e-12));
    }
}

TEST_CASE("joint scaling of x and y leaves T2, chi and k unchanged") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    TimeSeries x = table2_chirp(2000.0, 6.0);
    TimeSeries y = simulate_linear_oscillator(m, c, k, x);

    const GsSeries gs0 = compute_g_s(make_analytic(x), make_analytic(y));
    const StiffnessFit fit0 = estimate_stiffness(gs0, 333, 333);
    const ModalTrajectory t0 =
        identify_forcevibmod(make_analytic(x), make_analytic(y), fit0.k);

    const double alpha = 137.0;
    TimeSeries xs = x, ys = y;
    for (auto& v : xs.samples) v *= alpha;
    for (auto& v : ys.samples) v *= alpha;
    const GsSeries gs1 = compute_g_s(make_analytic(xs), make_analytic(ys));
    const StiffnessFit fit1 = estimate_stiffness(gs1, 333, 333);
    const ModalTrajectory t1 =
        identify_forcevibmod(make_analytic(xs), make_analytic(ys), fit1.k);

    CHECK(std::abs(fit1.k - fit0.k) / fit0.k < 1e-9);
    for (std::size_t i = 0; i < t0.size(); ++i) {
        if (!t0.valid[i] || !t1.valid[i]) continue;
        CHECK(std::abs(t1.T2[i] - t0.T2[i]) <= 1e-9 * std::abs(t0.T2[i]));
        CHECK(std::abs(t1.chi[i] - t0.chi[i]) <=
              1e-9 * std::max(std::abs(t0.chi[i]), 1e-12));
    }
}

TEST_CASE("scaling the excitation alone scales the stiffness estimate") {
    const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
    TimeSeries x = table2_chirp(2000.0, 6.0);
    const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
    const GsSeries gs0 = compute_g_s(make_analytic(x), make_analytic(y));
    const StiffnessFit fit0 = estimate_stiffness(gs0, 333, 333);

    const double alpha = 3.5;
    TimeSeries xs = x;
    for (auto& v : xs.samples) v *= alpha;
    const GsSeries gs1 = compute_g_s(make_analytic(xs), make_analytic(y));
    const StiffnessFit fit1 = estimate_stiffness(gs1, 333, 333);
    CHECK(fit1.k == doctest::Approx(alpha * fit0.k).epsilon(1e-9));
}

TEST_CASE("the identification denominator tracks A^2 w^3") {
    TimeSeries y;
    y.dt = 1.0 / 2000.0;
    y.samples.resize(8000);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double t = y.time_at(i);
        const double a = 1.0 + 0.3 * std::sin(two_pi * 0.5 * t);
        y.samples[i] = a * std::cos(two_pi * 30.0 * t);
    }
    const AnalyticRecord ay = make_analytic(y);
    const GsSeries gs = compute_g_s(make_analytic(zeros_like(y)), ay);
    for (std::size_t i = y.size() / 5; i < y.size() - y.size() / 5; ++i) {
        if (!gs.valid[i]) continue;
        const double expect =
            std::pow(ay.envelope[i], 2) * std::pow(ay.inst_freq[i], 3);
        const double ratio = gs.den_mag[i] / expect;
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
    }
}

TEST_CASE("trim_transients") {
    SUBCASE("constant amplitude passes untouched") {
        const TimeSeries y = tone(1.0, 20.0, 0.0, 1000.0, 4.0);
        const ModalTrajectory traj =
            identify_forcevibmod(make_analytic(zeros_like(y)), make_analytic(y), 100.0);
        const ModalTrajectory trimmed = trim_transients(traj);
        std::size_t before = 0, after = 0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            before += traj.valid[i];
            after += trimmed.valid[i];
        }
        CHECK(after == before);
    }

    SUBCASE("fast exponential decay is fully invalidated") {
        // |dA/dt|/A = 0.1*omega on every sample, above the 0.05*omega threshold.
        const double omega = two_pi * 30.0;
        const double dt = 5e-4;
        ModalTrajectory traj;
        for (std::size_t i = 0; i < 1000; ++i) {
            const double t = dt * static_cast<double>(i);
            traj.t.push_back(t);
            traj.amplitude.push_back(std::exp(-0.1 * omega * t));
            traj.T2.push_back(1.0 / (omega * omega));
            traj.chi.push_back(0.0);
            traj.omega_n.push_back(omega);
            traj.h.push_back(0.0);
            traj.valid.push_back(1);
        }
        const ModalTrajectory trimmed = trim_transients(traj, 0.05 * omega);
        for (std::size_t i = 0; i < trimmed.size(); ++i) CHECK(trimmed.valid[i] == 0);
    }

    SUBCASE("step-onset ring-up gets masked") {
        const double m = 1.0, c = 2.0, k = std::pow(two_pi * 30.0, 2);
        const TimeSeries x = table2_chirp();
        const TimeSeries y = simulate_linear_oscillator(m, c, k, x);
        ModalTrajectory traj =
            identify_forcevibmod(make_analytic(x), make_analytic(y), k);
        const ModalTrajectory trimmed = trim_transients(traj);
        // The first ~0.5 s contains the onset ring-up against the 20 Hz drive.
        std::size_t kept_early = 0;
        for (std::size_t i = traj.size() / 20; i < traj.size() / 10; ++i)
            kept_early += trimmed.valid[i];
        std::size_t kept_there_before = 0;
        for (std::size_t i = traj.size() / 20; i < traj.size() / 10; ++i)
            kept_there_before += traj.valid[i];
        CHECK(kept_early < kept_there_before);
    }
}
