#include "dcbsim/link.hpp"

#include <cassert>
#include <utility>

namespace dcbsim {

Channel::Channel(EventQueue& eq, Metrics& metrics, std::string name,
                 std::uint64_t bps, SimTime prop)
    : _eq(eq), _metrics(metrics), _name(std::move(name)), _bps(bps),
      _prop(prop), _link_id(metrics.register_link(_name, bps)) {}

void Channel::connect(Device* peer, PortId peer_port) {
    _peer = peer;
    _peer_port = peer_port;
}

void Channel::transmit(Frame f, std::function<void()> on_idle) {
    assert(!_busy && _peer && "transmit on a busy or unconnected channel");
    _busy = true;
    const SimTime ser = serialization(f.size);
    if (f.is_data()) _metrics.on_flight(f.cls, f.size);

    _eq.schedule_in(ser, [this, idle = std::move(on_idle)] {
        _busy = false;
        if (idle) idle();
    });
    _eq.schedule_in(ser + _prop, [this, f] {
        if (f.is_data()) {
            _metrics.on_flight(f.cls, -static_cast<std::int64_t>(f.size));
            _metrics.on_link_data(_link_id, f.size);
        }
        _peer->handle_frame(_peer_port, f);
    });
}

void Channel::send_pfc(std::uint8_t priority, bool pause) {
    assert(_peer && "send_pfc on an unconnected channel");
    const SimTime delay = serialization(CONTROL_FRAME_BYTES) + _prop;
    _eq.schedule_in(delay, [this, priority, pause] {
        _peer->handle_pfc(_peer_port, priority, pause);
    });
}

} // namespace dcbsim
