#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "modalid/config.hpp"
#include "modalid/oracles.hpp"
#include "modalid/pipeline.hpp"
#include "modalid/simulate.hpp"
#include "modalid/time_series.hpp"

namespace modalid {

/// A fully resolved simulation scenario: system, excitation, noise, seed and
/// initial conditions.
struct ScenarioSpec {
    std::string system_type;  ///< "simple" | "rlc" | "stickslip"
    SystemModel system;
    ChirpParams excitation;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::array<double, 4> initial{0.0, 0.0, 0.0, 0.0};  ///< (pos, vel, pos2, vel2)
};

/// Reads the [system], [excitation], [initial] and [noise] sections.
ScenarioSpec load_scenario(const ConfigFile& cfg);

/// Reads the optional [pipeline] section; absent keys keep their defaults.
PipelineConfig load_pipeline_config(const ConfigFile& cfg);

struct ScenarioRun {
    TimeSeries excitation;  ///< noise applied when the scenario asks for it
    TimeSeries response;
    std::optional<TimeSeries> x2;             ///< stick-slip riding mass
    std::vector<std::uint8_t> regime;         ///< stick-slip stick flags
};

/// Simulates the scenario, applying channel noise derived from the seed.
ScenarioRun run_scenario(const ScenarioSpec& spec);

/// As run_scenario but with the noise seed streams overridden; used by the
/// noise study to get independent trials from one base seed.
ScenarioRun run_scenario_with_noise(const ScenarioSpec& spec, double snr_db,
                                    std::uint64_t excitation_seed,
                                    std::uint64_t response_seed);

/// Deterministic stream splitting for seeds (splitmix64 round).
std::uint64_t seed_stream(std::uint64_t base, std::uint64_t stream);

}  // namespace modalid
