#pragma once

#include <cstdint>
#include <string>

#include "leopack/fsm.hpp"
#include "leopack/geometry.hpp"

namespace leopack {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value experiment description. Counts left at 0 mean "derive the
// default from the object geometry at run time".
struct ExperimentConfig {
    ObjectSpec object;
    BoxSpec box;
    int M = 0;    // template samples, 0 = auto
    int N = 180;  // perception rays
    int Q = 0;    // rod nodes, 0 = auto
    double delta_l = 50.0;
    double delta_f = 100.0;
    double dh = 50.0;
    double df = 0.0;  // 0 = auto (d_O/2)
    double z0 = 0.0;  // 0 = auto (h_B + 100)
    double noise_sigma = 1.0;
    double density = 0.15;
    double r_occ = 40.0;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool fix_enabled = true;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Emits every field; parse(render_config(c)) == c.
std::string render_config(const ExperimentConfig& config);

RunParams run_params(const ExperimentConfig& config);

}  // namespace leopack
