#include "modalid/scenario.hpp"

#include <cmath>

#include "modalid/errors.hpp"

namespace modalid {

std::uint64_t seed_stream(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ScenarioSpec load_scenario(const ConfigFile& cfg) {
    ScenarioSpec spec;
    spec.system_type = cfg.get_string("system", "type");

    if (spec.system_type == "simple") {
        SimpleOscillatorParams p;
        p.m = cfg.get_double("system", "m");
        p.beta = cfg.get_double("system", "beta");
        p.k = cfg.get_double("system", "k");
        if (!(p.m > 0.0) || !(p.k > 0.0) || p.beta < 0.0)
            cfg.fail("system", "m", "simple system needs m > 0, k > 0, beta >= 0");
        spec.system = p;
    } else if (spec.system_type == "rlc") {
        RlcParams p;
        p.L_nom = cfg.get_double("system", "l_nom");
        p.L_ds = cfg.get_double("system", "l_ds");
        p.i_star = cfg.get_double("system", "i_star");
        p.sigma = cfg.get_double("system", "sigma");
        p.C = cfg.get_double("system", "c");
        p.R = cfg.get_double("system", "r");
        if (!(p.L_nom > p.L_ds) || !(p.L_ds > 0.0) || !(p.C > 0.0) || p.R < 0.0 ||
            !(p.sigma > 0.0))
            cfg.fail("system", "l_nom", "rlc system needs L_nom > L_ds > 0, C > 0, R >= 0, sigma > 0");
        spec.system = p;
    } else if (spec.system_type == "stickslip") {
        StickSlipParams d = default_stick_slip_params();
        StickSlipParams p;
        p.m1 = cfg.get_double("system", "m1", d.m1);
        p.m2 = cfg.get_double("system", "m2", d.m2);
        p.k = cfg.get_double("system", "k", d.k);
        p.c = cfg.get_double("system", "c", d.c);
        p.mu = cfg.get_double("system", "mu", d.mu);
        p.g = cfg.get_double("system", "g", d.g);
        p.vel_tol = cfg.get_double("system", "vel_tol", d.vel_tol);
        if (!(p.m1 > 0.0) || !(p.m2 > 0.0) || !(p.k > 0.0) || p.mu < 0.0 ||
            p.c < 0.0 || p.g < 0.0 || !(p.vel_tol > 0.0))
            cfg.fail("system", "m1", "stickslip system has a non-positive mass/stiffness "
                                     "or negative coefficient");
        spec.system = p;
    } else {
        cfg.fail("system", "type",
                 "unknown system type '" + spec.system_type +
                     "' (expected simple, rlc or stickslip)");
    }

    spec.excitation.amplitude = cfg.get_double("excitation", "amplitude");
    spec.excitation.f1 = cfg.get_double("excitation", "f1");
    spec.excitation.f2 = cfg.get_double("excitation", "f2");
    spec.excitation.duration = cfg.get_double("excitation", "duration");
    spec.excitation.fs = cfg.get_double("excitation", "fs");

    spec.snr_db = cfg.get_double("noise", "snr_db",
                                 std::numeric_limits<double>::infinity());
    spec.seed = static_cast<std::uint64_t>(cfg.get_int("noise", "seed", 0));

    spec.initial[0] = cfg.get_double("initial", "pos", 0.0);
    spec.initial[1] = cfg.get_double("initial", "vel", 0.0);
    spec.initial[2] = cfg.get_double("initial", "pos2", 0.0);
    spec.initial[3] = cfg.get_double("initial", "vel2", 0.0);
    return spec;
}

PipelineConfig load_pipeline_config(const ConfigFile& cfg) {
    PipelineConfig pipe;
    pipe.hvd.lowpass_cutoff_hz = cfg.get_double("pipeline", "hvd_cutoff_hz", 0.0);
    pipe.hvd.demod_iterations =
        static_cast<int>(cfg.get_int("pipeline", "hvd_iterations", 3));
    pipe.hvd.edge_trim_fraction = cfg.get_double("pipeline", "edge_trim", 0.05);
    pipe.stiffness_window =
        static_cast<int>(cfg.get_int("pipeline", "stiffness_window", 0));
    pipe.stiffness_stride =
        static_cast<int>(cfg.get_int("pipeline", "stiffness_stride", 0));
    pipe.transient_rate_threshold =
        cfg.get_double("pipeline", "transient_threshold", 0.0);
    pipe.den_eps = cfg.get_double("pipeline", "den_eps", 1e-3);
    pipe.differentiate_excitation =
        cfg.get_bool("pipeline", "differentiate_excitation", false);
    return pipe;
}

ScenarioRun run_scenario_with_noise(const ScenarioSpec& spec, double snr_db,
                                    std::uint64_t excitation_seed,
                                    std::uint64_t response_seed) {
    const TimeSeries x = chirp(spec.excitation);
    ScenarioRun run;

    if (std::holds_alternative<SimpleOscillatorParams>(spec.system)) {
        const auto& p = std::get<SimpleOscillatorParams>(spec.system);
        run.response = simulate_simple(p, x, spec.initial[0], spec.initial[1]);
    } else if (std::holds_alternative<RlcParams>(spec.system)) {
        const auto& p = std::get<RlcParams>(spec.system);
        run.response = simulate_rlc(p, x, spec.initial[0], spec.initial[1]).current;
    } else {
        const auto& p = std::get<StickSlipParams>(spec.system);
        StickSlipState s0{spec.initial[0], spec.initial[1], spec.initial[2],
                          spec.initial[3]};
        StickSlipResponse r = simulate_stick_slip(p, x, s0);
        run.response = std::move(r.x1);
        run.x2 = std::move(r.x2);
        run.regime = std::move(r.stick);
    }

    run.excitation = add_noise(x, snr_db, excitation_seed);
    run.response = add_noise(run.response, snr_db, response_seed);
    return run;
}

ScenarioRun run_scenario(const ScenarioSpec& spec) {
    return run_scenario_with_noise(spec, spec.snr_db, seed_stream(spec.seed, 0),
                                   seed_stream(spec.seed, 1));
}

}  // namespace modalid
