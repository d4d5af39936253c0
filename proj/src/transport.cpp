#include "dcbsim/transport.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace dcbsim {

TcpSender::TcpSender(EventQueue& eq, HostDevice& host, Metrics& metrics,
                     FlowId flow, HostId dst, std::uint64_t size, FrameTag tag,
                     const TcpConfig& cfg)
    : _cfg(cfg), _eq(eq), _host(host), _metrics(metrics), _flow(flow),
      _dst(dst), _size(size), _tag(std::move(tag)) {
    _cwnd = static_cast<double>(_cfg.iw_segments) * _cfg.mtu;
    _ssthresh = std::numeric_limits<double>::max();
}

void TcpSender::start() {
    transmit_window();
    arm_rto();
}

std::uint32_t TcpSender::seg_bytes(std::uint64_t off) const {
    return static_cast<std::uint32_t>(
        _size == 0 ? _cfg.mtu : std::min<std::uint64_t>(_cfg.mtu, _size - off));
}

void TcpSender::send_segment(std::uint64_t off) {
    const std::uint32_t len = seg_bytes(off);
    Frame f = make_data_frame(_flow, _host.id(), _dst, off, len);
    _tag(f);
    if (off < _high) _metrics.on_retransmit(len);
    _host.enqueue(f);
}

void TcpSender::transmit_window() {
    while ((_size == 0 || _nxt < _size) &&
           static_cast<double>(_nxt - _una) + seg_bytes(_nxt) <= _cwnd) {
        send_segment(_nxt);
        _nxt += seg_bytes(_nxt);
        _high = std::max(_high, _nxt);
    }
}

void TcpSender::grow(std::uint64_t newly) {
    if (_mode == Mode::SlowStart) {
        _cwnd += std::min<double>(static_cast<double>(newly), _cfg.mtu);
        if (_cwnd >= _ssthresh) _mode = Mode::Avoidance;
    } else if (_mode == Mode::Avoidance) {
        _cwnd += static_cast<double>(_cfg.mtu) * newly / _cwnd;
    }
}

void TcpSender::on_new_ack(const Frame&, std::uint64_t newly) { grow(newly); }

void TcpSender::on_ack(const Frame& f) {
    if (finite_done()) return;
    const std::uint64_t ack = f.offset;

    if (ack > _una) {
        const std::uint64_t newly = ack - _una;
        _una = ack;
        _backoff = 0;
        if (_mode == Mode::Recovery) {
            if (ack >= _recover) {
                _mode = Mode::Avoidance;
                _cwnd = _ssthresh;
                _dupacks = 0;
            } else {
                // partial ack: the next hole is lost too
                send_segment(_una);
            }
        } else {
            _dupacks = 0;
            on_new_ack(f, newly);
        }
        if (finite_done()) return; // last byte acked; RTO dies lazily
        arm_rto();
        transmit_window();
    } else if (ack == _una) {
        ++_dupacks;
        if (_dupacks == 3 && _mode != Mode::Recovery) {
            _ssthresh = std::max(_cwnd / 2.0, 2.0 * _cfg.mtu);
            _cwnd = _ssthresh;
            _recover = _nxt;
            _mode = Mode::Recovery;
            send_segment(_una);
        }
    }
}

void TcpSender::arm_rto() {
    _deadline =
        _eq.now() + (_cfg.min_rto << std::min(_backoff, _cfg.max_backoff));
    if (!_rto_armed) {
        _rto_armed = true;
        _eq.schedule_at(_deadline, [this] { rto_fire(); });
    }
}

void TcpSender::rto_fire() {
    _rto_armed = false;
    if (finite_done()) return;
    if (_eq.now() < _deadline) { // activity since this was scheduled
        _rto_armed = true;
        _eq.schedule_at(_deadline, [this] { rto_fire(); });
        return;
    }
    _metrics.on_timeout();
    _ssthresh = std::max(_cwnd / 2.0, 2.0 * _cfg.mtu);
    _cwnd = _cfg.mtu;
    _mode = Mode::SlowStart;
    _dupacks = 0;
    _nxt = _una; // go-back-N
    ++_backoff;
    arm_rto();
    transmit_window();
}

DctcpSender::DctcpSender(EventQueue& eq, HostDevice& host, Metrics& metrics,
                         FlowId flow, HostId dst, std::uint64_t size,
                         FrameTag tag, const TcpConfig& cfg,
                         const DctcpConfig& dcfg)
    : TcpSender(eq, host, metrics, flow, dst, size, std::move(tag), cfg),
      _g(dcfg.g) {
    _win_size = _cwnd;
}

void DctcpSender::on_new_ack(const Frame& f, std::uint64_t newly) {
    _win_acked += newly;
    if (f.ecn_echo) _win_marked += newly;
    // marked windows decrease at the boundary instead of growing
    if (_win_marked == 0) grow(newly);
    if (_win_acked >= static_cast<std::uint64_t>(_win_size)) {
        const double frac =
            static_cast<double>(_win_marked) / static_cast<double>(_win_acked);
        _alpha = (1.0 - _g) * _alpha + _g * frac;
        if (_win_marked > 0)
            _cwnd = std::max<double>(_cfg.mtu, _cwnd * (1.0 - _alpha / 2.0));
        _win_acked = 0;
        _win_marked = 0;
        _win_size = _cwnd;
    }
}

} // namespace dcbsim
