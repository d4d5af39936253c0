#ifndef DCBSIM_METRICS_HPP
#define DCBSIM_METRICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcbsim/frame.hpp"
#include "dcbsim/time.hpp"

namespace dcbsim {

class EventQueue;

struct FlowRecord {
    FlowId id = 0;
    FlowClass cls = FlowClass::Mice;
    std::uint64_t size = 0; // 0 == persistent
    SimTime arrival = 0;
    SimTime complete = -1;  // -1 while incomplete
};

struct PauseEvent {
    SimTime t;
    int sw;
    std::uint8_t prio;
    bool pause; // false == resume
    double elephant_share;
    bool share_defined;
};

struct CnmEvent {
    SimTime t;
    FlowId flow;
    double fb_raw;
    std::uint8_t fb_quant;
    double mice_share;
    bool share_defined;
};

struct QueueSample {
    SimTime t;
    int sw;
    std::uint64_t mice_bytes;
    std::uint64_t elephant_bytes;
};

struct ClassTotals {
    std::uint64_t bytes_injected = 0;
    std::uint64_t bytes_delivered = 0;
    std::uint64_t bytes_dropped = 0;
    std::uint64_t frames_injected = 0;
    std::uint64_t frames_delivered = 0;
    std::uint64_t frames_dropped = 0;
};

struct FctStats {
    std::uint64_t completed = 0;
    std::uint64_t incomplete = 0;
    double mean_us = 0;
    double p50_us = 0;
    double p99_us = 0;
    double max_us = 0;
};

// Event-stream collectors for everything the experiments report. Owned by
// the single simulation thread; the summary and CSV outputs are pure
// functions of the collected state.
class Metrics {
public:
    Metrics(EventQueue& eq, SimTime warmup, SimTime horizon,
            SimTime throughput_bin = us(100));

    // --- census -----------------------------------------------------------
    void on_inject(FlowClass cls, std::uint32_t bytes);
    void on_deliver(FlowClass cls, std::uint32_t bytes);
    void on_drop(FlowClass cls, std::uint32_t bytes, int sw);
    // bytes staged inside switches / serializing+propagating on links
    void on_stage(FlowClass cls, std::int64_t delta_bytes);
    void on_flight(FlowClass cls, std::int64_t delta_bytes);

    // --- links --------------------------------------------------------------
    int register_link(const std::string& name, std::uint64_t bps);
    void track_link_bins(int link);
    void on_link_data(int link, std::uint32_t bytes); // DATA delivered over link
    void set_bottleneck_links(std::vector<int> links);
    void set_victim_links(std::vector<int> links);

    // --- control-plane events ----------------------------------------------
    void on_pause_event(int sw, std::uint8_t prio, bool pause,
                        double elephant_share, bool share_defined);
    void on_cnm(FlowId flow, double fb_raw, std::uint8_t fb_quant,
                double mice_share, bool share_defined);
    void on_retransmit(std::uint32_t bytes);
    void on_timeout();

    // --- flows ---------------------------------------------------------------
    void register_flow(FlowId id, FlowClass cls, std::uint64_t size,
                       SimTime arrival);
    void on_flow_complete(FlowId id);

    // --- queue sampling -----------------------------------------------------
    void record_queue_sample(int sw, std::uint64_t mice_bytes,
                             std::uint64_t elephant_bytes);
    void set_switch_names(std::vector<std::string> names);

    // --- reporting -----------------------------------------------------------
    void set_run_info(std::uint64_t seed) { _seed = seed; }
    nlohmann::json summary() const;
    void write_outputs(const std::string& dir) const;

    double link_utilization(const std::vector<int>& links) const;
    double mean_fct_us(FlowClass cls) const;
    FctStats fct_stats(FlowClass cls) const;
    double mean_fb_quant() const;
    double mean_fb_raw() const;
    double mean_mice_share_at_cnm() const;
    double mean_elephant_share_at_pause() const;
    std::uint64_t pause_count() const { return _pauses; }
    std::uint64_t resume_count() const { return _resumes; }
    std::uint64_t drop_frames(FlowClass cls) const;
    std::uint64_t drop_bytes(FlowClass cls) const;
    double drop_ratio_frames() const;
    bool conservation_exact() const;
    const ClassTotals& totals(FlowClass cls) const {
        return cls == FlowClass::Mice ? _mice : _elephant;
    }
    std::int64_t staged_bytes(FlowClass cls) const {
        return _staged[static_cast<int>(cls)];
    }
    std::int64_t inflight_bytes(FlowClass cls) const {
        return _in_flight[static_cast<int>(cls)];
    }
    std::int64_t resident_bytes(FlowClass cls) const {
        return staged_bytes(cls) + inflight_bytes(cls);
    }

    const std::vector<PauseEvent>& pause_events() const { return _pause_log; }
    const std::vector<CnmEvent>& cnm_events() const { return _cnm_log; }
    const std::vector<FlowRecord>& flows() const { return _flows; }
    const std::vector<QueueSample>& queue_samples() const { return _queue_log; }

    SimTime warmup() const { return _warmup; }
    SimTime horizon() const { return _horizon; }

private:
    struct LinkStats {
        std::string name;
        std::uint64_t bps = 0;
        bool binned = false;
        std::uint64_t window_bytes = 0; // within [warmup, horizon]
        std::vector<std::uint64_t> bins;
    };

    bool in_window(SimTime t) const { return t >= _warmup && t <= _horizon; }

    EventQueue& _eq;
    SimTime _warmup;
    SimTime _horizon;
    SimTime _bin;

    ClassTotals _mice, _elephant;
    ClassTotals& cls_totals(FlowClass c) {
        return c == FlowClass::Mice ? _mice : _elephant;
    }
    std::array<std::int64_t, 2> _staged{};
    std::array<std::int64_t, 2> _in_flight{};

    std::vector<LinkStats> _links;
    std::vector<int> _bottleneck_links;
    std::vector<int> _victim_links;

    std::uint64_t _pauses = 0, _resumes = 0;
    std::vector<PauseEvent> _pause_log;
    std::vector<CnmEvent> _cnm_log;
    std::uint64_t _retransmitted_bytes = 0, _timeouts = 0;

    std::vector<FlowRecord> _flows; // indexed by flow id
    std::vector<QueueSample> _queue_log;
    std::vector<std::string> _switch_names;
    std::optional<std::uint64_t> _seed;
};

} // namespace dcbsim

#endif
