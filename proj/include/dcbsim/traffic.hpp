#ifndef DCBSIM_TRAFFIC_HPP
#define DCBSIM_TRAFFIC_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcbsim/frame.hpp"
#include "dcbsim/time.hpp"
#include "dcbsim/topology.hpp"

namespace dcbsim {

enum class TrafficPattern {
    ManyToOne,
    HeadOfLine,
    IntraRank,
    InterRank,
    PoissonBackground,
};

enum class TrafficMix { MiceOnly, ElephantOnly, Mixed };

enum class IsolationMode { Mixed, IsolatedStrict, IsolatedEts };
enum class ElephantControl { None, Qcn, Tcp, Dctcp };

struct IsolationPolicy {
    IsolationMode mode = IsolationMode::Mixed;
    std::uint64_t boundary = 102400; // size-based classifier, bytes
    double mice_share = 0.9;         // ETS weight for the mice class
    bool mice_pfc = true;
    bool elephant_pfc = false; // isolation default: end-to-end control only
    ElephantControl elephant_control = ElephantControl::Qcn;
};

enum class MiceSizeDist { Uniform, Exponential, Fixed };

struct TrafficConfig {
    TrafficPattern pattern = TrafficPattern::ManyToOne;
    TrafficMix mix = TrafficMix::Mixed;
    double mice_load = 0.05; // fraction of one link's capacity
    MiceSizeDist mice_dist = MiceSizeDist::Uniform;
    std::uint64_t mice_min = 1024, mice_max = 10240; // uniform bounds
    double mice_mean = 2048;          // exponential/fixed parameter
    int elephants_per_host = 1;       // many-to-one senders
    std::uint64_t elephant_size = 0;  // bytes; 0 == persistent
    bool hol_incast = true;           // head-of-line: keep the incast load
    int hol_victims_per_host = 2;     // victim flows per sender host
    SimTime query_period = 0;         // 0 == pattern default
    int background_elephants = 2;     // query-response scenarios
    std::uint64_t seed = 1;
};

struct FlowSpec {
    FlowId id = 0;
    HostId src = 0, dst = 0;
    std::uint64_t size = 0;    // bytes; 0 == persistent
    SimTime arrival = 0;
    FlowClass cls = FlowClass::Elephant;
    bool unknown_size = false; // promoted MICE -> ELEPHANT at the boundary
};

struct Schedule {
    std::vector<FlowSpec> flows;      // sorted by (arrival, id)
    HostId receiver = 0;              // many-to-one sink (when meaningful)
    bool has_receiver = false;
    std::vector<std::pair<int, int>> victim_links; // (leaf, spine) pairs
};

// Size-based classification: size < boundary -> MICE, else ELEPHANT.
FlowClass classify(std::uint64_t size_bytes, std::uint64_t boundary);

// Priority lane for a class under the policy.
std::uint8_t assign_priority(FlowClass cls, const IsolationPolicy& policy);

// Per-flow frame tagger. Known-size flows get a fixed class/priority stamp.
// Unknown-size flows start as MICE and are promoted to ELEPHANT once the
// bytes already handed to the NIC reach the boundary; the stamp on each
// frame reflects the count *before* that frame.
FrameTag make_frame_tag(const FlowSpec& flow, const IsolationPolicy& policy);

// Pure function of (config, topology, horizon, seed).
Schedule generate(const TrafficConfig& cfg, const TopologyConfig& topo,
                  SimTime horizon);

// Line-oriented table: flow_id src dst size_bytes arrival_ns class.
std::string export_schedule(const std::vector<FlowSpec>& flows);
std::vector<FlowSpec> import_schedule(const std::string& text);

} // namespace dcbsim

#endif
