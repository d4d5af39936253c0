#ifndef DCBSIM_SOURCES_HPP
#define DCBSIM_SOURCES_HPP

#include <cstdint>
#include <functional>

#include "dcbsim/host.hpp"

namespace dcbsim {

// Uncontrolled sender: keeps a short pipeline of frames staged at the NIC
// and refills as they hit the wire, so rate control is whatever the host's
// class limiter imposes. size == 0 means persistent.
class BlastSource : public Source {
public:
    BlastSource(HostDevice& host, FlowId flow, HostId dst, std::uint64_t size,
                FrameTag tag, int pipeline = 4);

    void start() override;
    void on_wire(const Frame& f) override;

private:
    void fill();

    HostDevice& _host;
    FlowId _flow;
    HostId _dst;
    std::uint64_t _size;
    FrameTag _tag;
    int _pipeline;
    int _staged = 0;
    std::uint64_t _off = 0;
};

} // namespace dcbsim

#endif
