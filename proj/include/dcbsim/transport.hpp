#ifndef DCBSIM_TRANSPORT_HPP
#define DCBSIM_TRANSPORT_HPP

#include <cstdint>

#include "dcbsim/sources.hpp"

namespace dcbsim {

struct TcpConfig {
    std::uint32_t mtu = MTU_BYTES;
    std::uint32_t iw_segments = 10;
    SimTime min_rto = us(200);
    int max_backoff = 6; // RTO doubles per consecutive timeout, capped
};

// Minimal Reno: slow start / congestion avoidance with appropriate byte
// counting, fast retransmit on 3 dup-acks, go-back-N on timeout. No SACK,
// no pacing; the receiver acks cumulatively per DATA frame.
class TcpSender : public Source {
public:
    enum class Mode { SlowStart, Avoidance, Recovery };

    TcpSender(EventQueue& eq, HostDevice& host, Metrics& metrics, FlowId flow,
              HostId dst, std::uint64_t size, FrameTag tag,
              const TcpConfig& cfg = {});

    void start() override;
    void on_ack(const Frame& f) override;

    double cwnd() const { return _cwnd; }
    double ssthresh() const { return _ssthresh; }
    Mode mode() const { return _mode; }
    std::uint64_t acked() const { return _una; }

protected:
    // Per-new-ack hook: Reno grows cwnd; DCTCP layers mark accounting and
    // per-window decrease on top.
    virtual void on_new_ack(const Frame& f, std::uint64_t newly);
    void grow(std::uint64_t newly);

    double _cwnd = 0;     // bytes
    double _ssthresh = 0; // bytes
    TcpConfig _cfg;

private:
    bool finite_done() const { return _size > 0 && _una >= _size; }
    std::uint32_t seg_bytes(std::uint64_t off) const;
    void send_segment(std::uint64_t off);
    void transmit_window();
    void arm_rto();
    void rto_fire();

    EventQueue& _eq;
    HostDevice& _host;
    Metrics& _metrics;
    FlowId _flow;
    HostId _dst;
    std::uint64_t _size;
    FrameTag _tag;

    Mode _mode = Mode::SlowStart;
    std::uint64_t _una = 0, _nxt = 0, _high = 0, _recover = 0;
    int _dupacks = 0;
    int _backoff = 0;
    SimTime _deadline = 0;
    bool _rto_armed = false;
};

struct DctcpConfig {
    double g = 1.0 / 16.0; // alpha EWMA gain
};

// DCTCP on top of the Reno machinery: per-window ECN-mark fraction feeds
// alpha; a window containing marks is cut by alpha/2 instead of growing.
class DctcpSender : public TcpSender {
public:
    DctcpSender(EventQueue& eq, HostDevice& host, Metrics& metrics,
                FlowId flow, HostId dst, std::uint64_t size, FrameTag tag,
                const TcpConfig& cfg = {}, const DctcpConfig& dcfg = {});

    double alpha() const { return _alpha; }

protected:
    void on_new_ack(const Frame& f, std::uint64_t newly) override;

private:
    double _alpha = 0;
    double _g;
    double _win_size = 0; // cwnd at window start, bytes
    std::uint64_t _win_acked = 0, _win_marked = 0;
};

} // namespace dcbsim

#endif
