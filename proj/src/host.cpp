#include "dcbsim/host.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace dcbsim {

namespace {
// Burst allowance of eight MTUs: a short burst clears the limiter at line
// rate and the class repays the debt afterwards, so only sustained senders
// are actually paced.
constexpr double kBucketBits = 8.0 * 8 * MTU_BYTES;
}

HostDevice::HostDevice(EventQueue& eq, Metrics& metrics, HostId id,
                       std::string name)
    : _eq(eq), _metrics(metrics), _id(id), _name(std::move(name)) {}

void HostDevice::attach(Channel* out) { _out = out; }

void HostDevice::enable_rp(std::uint8_t priority, const QcnRpConfig& cfg) {
    auto& lim = _lim[priority];
    lim.cfg = cfg;
    lim.rp.emplace(cfg, static_cast<double>(capacity_bps()));
    lim.tokens = kBucketBits;
    lim.anchor = _eq.now();
}

double HostDevice::rp_rate_bps(std::uint8_t priority) const {
    const auto& lim = _lim[priority];
    return lim.rp ? lim.rp->rate() : static_cast<double>(capacity_bps());
}

void HostDevice::refresh(Limiter& lim) {
    const SimTime now = _eq.now();
    lim.tokens = std::min(
        kBucketBits, lim.tokens + lim.rp->rate() * 1e-12 *
                                      static_cast<double>(now - lim.anchor));
    lim.anchor = now;
}

bool HostDevice::credit(Limiter& lim, std::uint32_t bytes) {
    if (!lim.rp) return true;
    refresh(lim);
    return lim.tokens + 1e-6 >= 8.0 * bytes;
}

void HostDevice::drop_retry(Limiter& lim) {
    if (lim.retry_armed) {
        _eq.cancel(lim.retry);
        lim.retry_armed = false;
    }
}

// The head of `priority` is blocked on tokens alone: wake up when enough
// have accrued at the current rate. A stale wake-up is harmless; the next
// scan recomputes from scratch.
void HostDevice::arm_retry(int priority) {
    auto& lim = _lim[priority];
    if (lim.retry_armed) return;
    const double need = 8.0 * _q[priority].front().size - lim.tokens;
    const auto wait = std::max<SimTime>(
        1, static_cast<SimTime>(std::ceil(need / lim.rp->rate() * 1e12)));
    lim.retry = _eq.schedule_in(wait, [this, priority] {
        _lim[priority].retry_armed = false;
        try_send();
    });
    lim.retry_armed = true;
}

void HostDevice::timer_fire(int priority) {
    auto& lim = _lim[priority];
    lim.timer_armed = false;
    refresh(lim); // accrue at the pre-increase rate
    lim.rp->on_timer();
    if (lim.rp->rate() < static_cast<double>(capacity_bps())) {
        lim.timer = _eq.schedule_in(lim.cfg.timer_period,
                                    [this, priority] { timer_fire(priority); });
        lim.timer_armed = true;
    }
    drop_retry(lim); // the old wake-up undershoots the recovered rate
    try_send();
}

void HostDevice::register_source(FlowId flow, Source* s) {
    _sources[flow] = s;
}

void HostDevice::expect_flow(FlowId flow, std::uint64_t size_bytes,
                             bool acked) {
    Rx rx;
    rx.size = size_bytes;
    rx.ack = acked;
    _rx[flow] = rx;
}

std::uint64_t HostDevice::received_contiguous(FlowId flow) const {
    auto it = _rx.find(flow);
    return it == _rx.end() ? 0 : it->second.contiguous;
}

void HostDevice::enqueue(const Frame& f) {
    if (f.is_data())
        _q[f.priority].push_back(f);
    else
        _control.push_back(f);
    try_send();
}

std::size_t HostDevice::backlog_frames() const {
    std::size_t n = _control.size();
    for (const auto& q : _q) n += q.size();
    return n;
}

void HostDevice::handle_frame(PortId, Frame f) {
    switch (f.kind) {
    case FrameKind::Data: {
        auto it = _rx.find(f.flow);
        assert(it != _rx.end() && "DATA for an undeclared flow");
        Rx& rx = it->second;
        _metrics.on_deliver(f.cls, f.size);
        rx.add(f.offset, f.size);
        if (rx.ack) {
            Frame ack;
            ack.kind = FrameKind::Ack;
            ack.flow = f.flow;
            ack.src = _id;
            ack.dst = f.src;
            ack.size = CONTROL_FRAME_BYTES;
            ack.priority = f.priority;
            ack.cls = f.cls;
            ack.offset = rx.contiguous; // cumulative
            ack.ecn_echo = f.ecn;
            enqueue(ack);
        }
        if (!rx.done && rx.size > 0 && rx.contiguous >= rx.size) {
            rx.done = true;
            _metrics.on_flow_complete(f.flow);
        }
        break;
    }
    case FrameKind::Ack: {
        auto it = _sources.find(f.flow);
        if (it != _sources.end()) it->second->on_ack(f);
        break;
    }
    case FrameKind::Cnm: {
        auto& lim = _lim[f.priority];
        if (lim.rp) {
            refresh(lim); // accrue at the pre-decrease rate
            lim.rp->on_cnm(f.fb_quant);
            if (lim.timer_armed) _eq.cancel(lim.timer);
            const int priority = f.priority;
            lim.timer = _eq.schedule_in(
                lim.cfg.timer_period,
                [this, priority] { timer_fire(priority); });
            lim.timer_armed = true;
        }
        break;
    }
    default:
        assert(false && "PAUSE/RESUME arrive via handle_pfc");
    }
}

void HostDevice::handle_pfc(PortId, std::uint8_t priority, bool pause) {
    if (pause)
        _halted |= (1u << priority);
    else {
        _halted &= ~(1u << priority);
        try_send();
    }
}

void HostDevice::try_send() {
    if (!_out || !_out->idle()) return;

    Frame f;
    bool paced = false;
    if (!_control.empty()) {
        f = _control.front();
        _control.pop_front();
    } else {
        int pick = -1;
        int starved = -1; // a head blocked on tokens alone
        for (int p = MAX_PRIORITIES - 1; p >= 0; --p) {
            if (_q[p].empty() || (_halted & (1u << p))) continue;
            if (limited(_q[p].front()) &&
                !credit(_lim[p], _q[p].front().size)) {
                if (starved < 0) starved = p;
                continue; // a lower class may still use the wire
            }
            pick = p;
            break;
        }
        if (pick < 0) {
            if (starved >= 0) arm_retry(starved);
            return;
        }
        f = _q[pick].front();
        _q[pick].pop_front();
        paced = limited(f);
        if (paced) _lim[pick].tokens -= 8.0 * f.size;
    }
    // Occupy the channel before notifying the source: its on_wire handler
    // may enqueue more frames, which must not re-enter the serializer.
    _out->transmit(f, [this] { try_send(); });
    if (f.is_data()) {
        _metrics.on_inject(f.cls, f.size);
        if (paced) {
            auto& lim = _lim[f.priority];
            refresh(lim); // accrue at the pre-increase rate
            if (lim.rp->on_bytes_sent(f.size))
                drop_retry(lim); // wake-up recomputes at the raised rate
        }
        auto it = _sources.find(f.flow);
        if (it != _sources.end()) it->second->on_wire(f);
    }
}

// Merge one received segment; duplicate bytes collapse so reassembly is
// idempotent under retransmission.
void HostDevice::Rx::add(std::uint64_t offset, std::uint64_t len) {
    std::uint64_t end = offset + len;
    auto it = ooo.lower_bound(offset);
    if (it != ooo.begin()) {
        auto prev = std::prev(it);
        if (prev->second >= offset) {
            offset = prev->first;
            end = std::max(end, prev->second);
            it = ooo.erase(prev);
        }
    }
    while (it != ooo.end() && it->first <= end) {
        end = std::max(end, it->second);
        it = ooo.erase(it);
    }
    ooo[offset] = end;
    auto front = ooo.begin();
    if (front->first <= contiguous)
        contiguous = std::max(contiguous, front->second);
}

} // namespace dcbsim
