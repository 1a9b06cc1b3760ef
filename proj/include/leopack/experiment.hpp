#pragma once

#include <string>
#include <vector>

#include "leopack/config.hpp"
#include "leopack/fsm.hpp"

namespace leopack {

// Runs the full packing task and writes template.ply, cloud_####.ply,
// metrics.csv, events.log, trace.json and (optionally) frames/*.svg under
// out_dir. Returns the trace.
TaskTrace run_experiment(const ExperimentConfig& config,
                         const std::string& out_dir, bool record_frames);

void write_metrics_csv(const TaskTrace& trace, const std::string& path);
void write_trace_json(const TaskTrace& trace, const std::string& path);

// Post-run quality gate: Success, final |e - d_O/2| <= 0.25 d_O, final
// e_out <= 2 mm. Returns a failure description or empty on pass.
std::string check_trace(const TaskTrace& trace);

struct BatchRow {
    std::string config;
    std::uint64_t seed = 0;
    int loops = 0;
    std::string status;
    double e = 0.0;
    double mu = 0.0;
    double sigma2 = 0.0;
};

// One run per (config, seed 0..repeats-1); partial failures are recorded and
// the batch continues. Writes summary.csv with per-run rows plus per-config
// mean/std/success-rate aggregates.
std::vector<BatchRow> run_batch(const std::vector<std::string>& config_paths,
                                int repeats, const std::string& out_dir);

}  // namespace leopack
