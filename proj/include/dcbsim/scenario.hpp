#ifndef DCBSIM_SCENARIO_HPP
#define DCBSIM_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "dcbsim/traffic.hpp"

namespace dcbsim {

struct PfcScenario {
    bool enabled = true;
    std::uint32_t k1 = 25057;
    std::uint32_t k2 = 0;       // 0 -> K1/2
    std::uint32_t headroom = 24095;
    bool elephant = false; // also run PFC on the elephant class (isolation)
};

struct QcnScenario {
    bool enabled = true;
    std::uint32_t q_eq = 0; // 0 -> 20% of the class partition
    double w = 2.0;
    double gd = 1.0 / 128.0;
    std::uint32_t sample_interval = 153600;
    double sample_jitter = 0.30;
    int fb_max = 63;
    std::uint64_t byte_counter = 153600;
    double timer_ms = 15.0;
    double r_ai_mbps = 5.0;
    double min_rate_mbps = 1.0;
    int fast_recovery_stages = 5;
};

struct TransportScenario {
    ElephantControl kind = ElephantControl::None; // none|tcp|dctcp
    std::uint32_t tcp_iw = 10;
    double tcp_min_rto_us = 200.0;
    double dctcp_g = 1.0 / 16.0;
    std::uint32_t ecn_threshold = 30720;
};

// Everything a run needs, one INI section per module. Every field has a
// default; an empty file is the stock mixed many-to-one experiment.
struct ScenarioConfig {
    TopologyConfig topo;
    std::uint32_t port_buffer_bytes = 153600; // per (ingress port, class) pool
    TrafficConfig traffic;
    PfcScenario pfc;
    QcnScenario qcn;
    TransportScenario transport;
    IsolationMode mode = IsolationMode::Mixed;
    std::uint64_t boundary_bytes = 102400;
    double mice_share = 0.9; // ETS weight for mice
    std::uint32_t mice_buffer_bytes = 49152;
    double horizon_ms = 1000.0;
    double warmup_ms = 50.0;
    std::uint64_t seed = 1;
    std::string out_dir;

    // derived values
    std::uint32_t resolved_k2() const { return pfc.k2 ? pfc.k2 : pfc.k1 / 2; }
    std::uint32_t partition_bytes(FlowClass cls) const {
        if (mode == IsolationMode::Mixed) return port_buffer_bytes;
        return cls == FlowClass::Mice ? mice_buffer_bytes
                                      : port_buffer_bytes - mice_buffer_bytes;
    }
    std::uint32_t resolved_q_eq(std::uint32_t partition) const {
        return qcn.q_eq ? qcn.q_eq : partition / 5;
    }
    // Which end-to-end mechanism governs the elephant class.
    ElephantControl elephant_control() const {
        if (transport.kind != ElephantControl::None) return transport.kind;
        return qcn.enabled ? ElephantControl::Qcn : ElephantControl::None;
    }
    SimTime horizon() const { return sec_to_ps(horizon_ms * 1e-3); }
    SimTime warmup() const { return sec_to_ps(warmup_ms * 1e-3); }
};

// INI-style text: [section] headers, key=value lines, '#'/';' comments.
// Keys are matched case-insensitively; unknown keys raise errors carrying
// the line number. The result is validated.
ScenarioConfig parse_scenario(const std::string& text);

// Full round-trippable dump (every key, current values).
std::string serialize_scenario(const ScenarioConfig& cfg);

// Apply one "section.key=value" override (CLI sweeps). Throws on unknown
// keys; `numeric_only` additionally rejects enum/string keys.
void apply_override(ScenarioConfig& cfg, const std::string& key,
                    const std::string& value, bool numeric_only = false);

// Enforces every cross-field invariant; throws std::runtime_error.
void validate_scenario(const ScenarioConfig& cfg);

} // namespace dcbsim

#endif
