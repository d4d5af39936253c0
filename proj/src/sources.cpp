#include "dcbsim/sources.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dcbsim {

BlastSource::BlastSource(HostDevice& host, FlowId flow, HostId dst,
                         std::uint64_t size, FrameTag tag, int pipeline)
    : _host(host), _flow(flow), _dst(dst), _size(size), _tag(std::move(tag)),
      _pipeline(pipeline) {}

void BlastSource::start() { fill(); }

void BlastSource::on_wire(const Frame&) {
    --_staged;
    fill();
}

void BlastSource::fill() {
    while (_staged < _pipeline && (_size == 0 || _off < _size)) {
        const auto len = static_cast<std::uint32_t>(
            _size == 0 ? MTU_BYTES
                       : std::min<std::uint64_t>(MTU_BYTES, _size - _off));
        Frame f = make_data_frame(_flow, _host.id(), _dst, _off, len);
        _tag(f);
        _off += len;
        ++_staged;
        _host.enqueue(f);
    }
}

} // namespace dcbsim
