#ifndef DCBSIM_LINK_HPP
#define DCBSIM_LINK_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "dcbsim/event_queue.hpp"
#include "dcbsim/frame.hpp"
#include "dcbsim/metrics.hpp"
#include "dcbsim/time.hpp"

namespace dcbsim {

// Anything a channel can deliver frames to.
class Device {
public:
    virtual ~Device() = default;
    // A frame finished arriving on `in_port`.
    virtual void handle_frame(PortId in_port, Frame f) = 0;
    // PFC Xon/Xoff from the neighbor reached via `port`: halt (or resume)
    // DATA of `priority` on the egress side of that port.
    virtual void handle_pfc(PortId port, std::uint8_t priority, bool pause) = 0;
};

// One direction of a full-duplex cable: serializes frames at `bps`, then
// delivers them `prop` later. The owner drives it from its scheduler; the
// on_idle callback re-arms the owner when the serializer frees up.
class Channel {
public:
    Channel(EventQueue& eq, Metrics& metrics, std::string name,
            std::uint64_t bps, SimTime prop);

    void connect(Device* peer, PortId peer_port);

    bool idle() const { return !_busy; }
    std::uint64_t bps() const { return _bps; }
    SimTime prop() const { return _prop; }
    int link_id() const { return _link_id; }
    const std::string& name() const { return _name; }

    SimTime serialization(std::uint32_t bytes) const {
        return serialization_ps(bytes, _bps);
    }

    // Occupy the serializer with one frame; deliver it to the peer at
    // serialization end + propagation. `on_idle` fires at serialization end.
    void transmit(Frame f, std::function<void()> on_idle);

    // PFC runs beside the data path: delivered after one control-frame
    // serialization time + propagation, without occupying the serializer.
    void send_pfc(std::uint8_t priority, bool pause);

private:
    EventQueue& _eq;
    Metrics& _metrics;
    std::string _name;
    std::uint64_t _bps;
    SimTime _prop;
    Device* _peer = nullptr;
    PortId _peer_port = 0;
    bool _busy = false;
    int _link_id;
};

} // namespace dcbsim

#endif
