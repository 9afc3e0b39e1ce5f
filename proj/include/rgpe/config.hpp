#pragma once
#include <cstdint>
#include <set>
#include <string>
#include "rgpe/duhamel.hpp"
#include "rgpe/field.hpp"
#include "rgpe/propagator.hpp"

namespace rgpe {

// Initial-data choice: gaussian | vortex:m | file:path | random:seed.
struct InitialData {
    enum class Kind { gaussian, vortex, file, random } kind = Kind::gaussian;
    int vortex_m = 1;
    std::string file_path;
    std::uint64_t seed = 1;
    double amplitude = 1.0;  // scales the sampled datum

    WaveField realize(const GridSpec& g, double omega) const;
};

struct RunConfig {
    SimulationParams params;
    GridSpec grid = make_grid(128, 8.0);
    EvolveConfig evolve;
    PicardConfig picard;
    InitialData initial_data;
    std::string output_dir = "out";
    std::set<std::string> suites;          // subset of the five suite names
    std::vector<std::string> warnings;     // e.g. "outside paper regime"
};

inline const std::set<std::string>& known_suites() {
    static const std::set<std::string> s{"conservation", "operators", "oracle",
                                         "picard", "strichartz"};
    return s;
}

// Parses the INI-style config text (sections [params], [grid], [evolve],
// [picard], [output]; '#' or ';' comments). Unknown sections or keys are hard
// errors; numeric fields are validated against module preconditions before
// any compute. Defaults: ω=1, β=1, σ=1, n=128, l=8, dt=1e−3, t_end=π/2, ρ=4.
RunConfig parse_config(const std::string& text);

// Inverse of parse_config up to formatting: parse_config(render(c)) == c.
std::string render_config(const RunConfig& c);

} // namespace rgpe
