#ifndef DCBSIM_SIMULATION_HPP
#define DCBSIM_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcbsim/scenario.hpp"

namespace dcbsim {

// Everything a test or the CLI wants back from one run. `summary` is the
// exact object written to summary.json; the typed fields are conveniences
// copied out of the collector before teardown.
struct RunResult {
    nlohmann::json summary;

    double mice_fct_mean_us = 0.0;
    double mice_fct_p99_us = 0.0;
    double elephant_fct_mean_us = 0.0;
    double bottleneck_utilization = 0.0;
    double victim_utilization = -1.0; // -1 when no victim links designated
    std::uint64_t pause_events = 0;
    std::uint64_t mice_drops = 0;
    std::uint64_t elephant_drops = 0;
    std::uint64_t cnm_count = 0;
    double fb_mean_raw = 0.0;
    double fb_mean_quant = 0.0;
    double mice_share_at_cnm = -1.0;
    double drop_ratio = 0.0;
    bool conservation = true;
    std::uint64_t mice_completed = 0;
};

// Execute one scenario to its horizon. When `out_dir` (argument, else
// cfg.out_dir) is nonempty the full report set is written there.
RunResult run_scenario(const ScenarioConfig& cfg,
                       const std::string& out_dir = "");

struct SweepPoint {
    std::string value;
    ScenarioConfig cfg;
    RunResult result;
};

// One run per value of `key` (numeric keys only). Point i gets
// sim.seed = base_seed XOR i; the traffic seed is left alone so every
// point sees the same workload. Points run independently and in
// parallel; outputs land in <out_dir>/<value>/ plus a merged sweep.csv.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& base,
                                  const std::string& key,
                                  const std::vector<std::string>& values,
                                  const std::string& out_dir = "");

// The merged one-line-per-point table (also written as sweep.csv).
std::string sweep_table(const std::string& key,
                        const std::vector<SweepPoint>& points);

} // namespace dcbsim

#endif
