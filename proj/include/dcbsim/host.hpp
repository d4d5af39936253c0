#ifndef DCBSIM_HOST_HPP
#define DCBSIM_HOST_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include "dcbsim/link.hpp"
#include "dcbsim/qcn.hpp"

namespace dcbsim {

// Per-flow sending strategy. The owning host dispatches network feedback
// (ACK) and transmit-start notifications back to it.
class Source {
public:
    virtual ~Source() = default;
    virtual void start() = 0;
    virtual void on_wire(const Frame& f) { (void)f; } // frame hit the wire
    virtual void on_ack(const Frame& f) { (void)f; }
};

// End host: one access link, per-priority NIC staging queues with a strict
// control-first scheduler, per-flow sources on the send side and reassembly
// sinks on the receive side. A PFC pause stalls injection of that priority;
// nothing is ever dropped at a host. Classes under QCN carry a reaction
// point: one rate limiter per priority, shared by every long-lived flow the
// host sends in that class. Only elephant frames spend limiter tokens --
// mice are not congestion-controlled -- but the class shares one FIFO, so
// traffic behind a throttled elephant frame waits with it, and a CNM
// triggered by a sampled mouse still cuts the host's limiter for the class.
class HostDevice : public Device {
public:
    HostDevice(EventQueue& eq, Metrics& metrics, HostId id, std::string name);

    void attach(Channel* out);
    std::uint64_t capacity_bps() const { return _out->bps(); }
    HostId id() const { return _id; }
    const std::string& name() const { return _name; }

    void handle_frame(PortId in_port, Frame f) override;
    void handle_pfc(PortId port, std::uint8_t priority, bool pause) override;

    // send side
    void register_source(FlowId flow, Source* s);
    void enqueue(const Frame& f);
    std::size_t backlog_frames() const;

    // QCN reaction point for one class. Transparent until the first CNM:
    // the limiter starts at line rate with an eight-MTU token bucket.
    void enable_rp(std::uint8_t priority, const QcnRpConfig& cfg);
    double rp_rate_bps(std::uint8_t priority) const;

    // receive side: declare a flow this host terminates. `acked` flows get
    // cumulative 64B ACKs (with ECN echo) per received DATA frame.
    void expect_flow(FlowId flow, std::uint64_t size_bytes, bool acked);
    std::uint64_t received_contiguous(FlowId flow) const;

private:
    struct Rx {
        std::uint64_t size = 0; // 0 == persistent, never completes
        bool ack = false;
        std::uint64_t contiguous = 0;
        std::map<std::uint64_t, std::uint64_t> ooo; // offset -> end
        bool done = false;
        void add(std::uint64_t offset, std::uint64_t len);
    };
    struct Limiter {
        QcnRpConfig cfg;
        std::optional<ReactionPoint> rp; // engaged iff the class is limited
        double tokens = 0; // bits
        SimTime anchor = 0;
        EventQueue::Handle retry, timer;
        bool retry_armed = false;
        bool timer_armed = false;
    };

    void try_send();
    void refresh(Limiter& lim);
    bool credit(Limiter& lim, std::uint32_t bytes);
    void arm_retry(int priority);
    void drop_retry(Limiter& lim);
    void timer_fire(int priority);
    bool limited(const Frame& f) const {
        return f.cls == FlowClass::Elephant && _lim[f.priority].rp.has_value();
    }

    EventQueue& _eq;
    Metrics& _metrics;
    HostId _id;
    std::string _name;
    Channel* _out = nullptr;
    std::deque<Frame> _control;
    std::array<std::deque<Frame>, MAX_PRIORITIES> _q;
    std::array<Limiter, MAX_PRIORITIES> _lim;
    std::uint32_t _halted = 0;
    std::unordered_map<FlowId, Source*> _sources;
    std::unordered_map<FlowId, Rx> _rx;
};

} // namespace dcbsim

#endif
