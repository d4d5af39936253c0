#ifndef DCBSIM_SWITCH_HPP
#define DCBSIM_SWITCH_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "dcbsim/link.hpp"
#include "dcbsim/pfc.hpp"
#include "dcbsim/qcn.hpp"

namespace dcbsim {

// Per-traffic-class switch behavior: one ingress partition per (port, class)
// plus the flow-control hooks that watch it.
struct SwitchClassConfig {
    std::uint32_t partition = 153600; // ingress buffer bytes per (port, class)
    PfcConfig pfc;
    QcnCpConfig qcn;
    bool ecn_mark = false;
    std::uint32_t ecn_threshold = 30720;
};

enum class SchedulerKind { Strict, Ets };

struct SwitchConfig {
    int num_classes = 1; // data priorities in use: 0 .. num_classes-1
    std::array<SwitchClassConfig, MAX_PRIORITIES> cls{};
    SchedulerKind scheduler = SchedulerKind::Strict;
    // Nonnegative, summing to 1 over the classes in use. A zero-weight class
    // is served only when every positive-weight class is empty or halted.
    std::array<double, MAX_PRIORITIES> ets_weights{};
};

// Output-queued switch with virtual-input-queue accounting: the ingress
// counter of the arrival port backs admission and PFC and is released when
// the frame finishes serializing out; the egress queue occupancy (per output
// port and class) backs the QCN congestion point and ECN marking. Drops
// happen at admission only; control frames bypass buffer accounting and are
// served ahead of DATA.
class SwitchDevice : public Device {
public:
    SwitchDevice(EventQueue& eq, Metrics& metrics, int id, std::string name,
                 const SwitchConfig& cfg, std::uint64_t seed);

    // Ports are attached in index order; `out` is this switch's outgoing
    // channel on that port (the reverse direction of the arrival cable).
    PortId attach_port(Channel* out);
    void set_router(std::function<PortId(const Frame&)> route);

    void handle_frame(PortId in_port, Frame f) override;
    void handle_pfc(PortId port, std::uint8_t priority, bool pause) override;

    int id() const { return _id; }
    const std::string& name() const { return _name; }
    std::uint64_t class_occupancy(FlowClass cls) const {
        return _occ_total[static_cast<int>(cls)];
    }

private:
    struct Ingress {
        std::uint64_t occ = 0;
        std::uint64_t occ_mice = 0;
        PfcGate gate;
        Ingress(const SwitchClassConfig& c) : gate(c.pfc) {}
    };
    struct Staged {
        Frame f;
        PortId in_port;
    };
    struct Egress {
        Channel* out = nullptr;
        std::deque<Frame> control;
        std::array<std::deque<Staged>, MAX_PRIORITIES> q;
        std::vector<CongestionPoint> cp;            // one per class
        std::array<std::uint64_t, MAX_PRIORITIES> occ{};
        std::array<std::uint64_t, MAX_PRIORITIES> occ_mice{};
        std::uint32_t halted = 0; // bit per priority
        std::array<std::int64_t, MAX_PRIORITIES> deficit{};
        std::array<bool, MAX_PRIORITIES> awarded{};
        int cursor = 0;
    };

    void try_send(PortId port);
    int pick_class(Egress& eg);
    int pick_strict(const Egress& eg) const;
    int pick_ets(Egress& eg);
    bool eligible(const Egress& eg, int p) const {
        return !(eg.halted & (1u << p)) && !eg.q[p].empty();
    }
    void release_ingress(PortId in_port, const Frame& f);

    EventQueue& _eq;
    Metrics& _metrics;
    int _id;
    std::string _name;
    SwitchConfig _cfg;
    std::uint64_t _seed;
    std::function<PortId(const Frame&)> _route;
    std::vector<std::vector<Ingress>> _ing; // [port][class]
    std::vector<Egress> _eg;                // [port]
    std::array<std::int64_t, MAX_PRIORITIES> _quantum{};
    std::array<std::uint64_t, 2> _occ_total{}; // per FlowClass, all ports
};

} // namespace dcbsim

#endif
