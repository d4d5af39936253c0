#ifndef DCBSIM_FRAME_HPP
#define DCBSIM_FRAME_HPP

#include <cstdint>
#include <functional>

namespace dcbsim {

using FlowId = std::uint32_t;
using HostId = std::uint32_t;
using PortId = std::uint32_t;

constexpr std::uint32_t MTU_BYTES = 1500;
constexpr std::uint32_t CONTROL_FRAME_BYTES = 64;
constexpr int MAX_PRIORITIES = 8;

enum class FrameKind : std::uint8_t { Data, Pause, Resume, Cnm, Ack };
enum class FlowClass : std::uint8_t { Mice, Elephant };

inline const char* to_string(FlowClass c) {
    return c == FlowClass::Mice ? "mice" : "elephant";
}

struct Frame {
    FlowId flow = 0;
    HostId src = 0;
    HostId dst = 0;
    std::uint64_t offset = 0;  // DATA: byte offset in flow; ACK: cumulative ack
    std::uint32_t size = CONTROL_FRAME_BYTES;
    std::uint8_t priority = 0;
    FrameKind kind = FrameKind::Data;
    FlowClass cls = FlowClass::Mice;
    bool ecn = false;       // congestion-experienced mark (DCTCP)
    bool ecn_echo = false;  // ACK: echoes the acked frame's mark
    std::uint8_t fb_quant = 0; // CNM payload
    double fb_raw = 0.0;       // CNM: unquantized feedback, kept for metrics

    bool is_data() const { return kind == FrameKind::Data; }
    bool is_control() const { return kind != FrameKind::Data; }
};

// Stamps class/priority onto outgoing DATA frames; owns any promotion
// bookkeeping for unknown-size flows.
using FrameTag = std::function<void(Frame&)>;

inline Frame make_data_frame(FlowId flow, HostId src, HostId dst,
                             std::uint64_t offset, std::uint32_t size,
                             std::uint8_t priority = 0,
                             FlowClass cls = FlowClass::Mice) {
    Frame f;
    f.flow = flow;
    f.src = src;
    f.dst = dst;
    f.offset = offset;
    f.size = size;
    f.priority = priority;
    f.kind = FrameKind::Data;
    f.cls = cls;
    return f;
}

} // namespace dcbsim

#endif
