#include "dcbsim/switch.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "dcbsim/rng.hpp"

namespace dcbsim {

SwitchDevice::SwitchDevice(EventQueue& eq, Metrics& metrics, int id,
                           std::string name, const SwitchConfig& cfg,
                           std::uint64_t seed)
    : _eq(eq), _metrics(metrics), _id(id), _name(std::move(name)), _cfg(cfg),
      _seed(seed) {
    // DWRR quantum: the smallest positive weight gets exactly one MTU per
    // round, so one credit award always covers the frame at the head.
    double min_w = 1.0;
    for (int p = 0; p < _cfg.num_classes; ++p) {
        const double w = _cfg.ets_weights[p];
        if (w > 0.0) min_w = std::min(min_w, w);
    }
    for (int p = 0; p < _cfg.num_classes; ++p) {
        _quantum[p] = static_cast<std::int64_t>(
            _cfg.ets_weights[p] * MTU_BYTES / min_w + 0.5);
    }
}

PortId SwitchDevice::attach_port(Channel* out) {
    const PortId port = static_cast<PortId>(_eg.size());
    Egress eg;
    eg.out = out;
    eg.cp.reserve(_cfg.num_classes);
    for (int p = 0; p < _cfg.num_classes; ++p)
        eg.cp.emplace_back(_cfg.cls[p].qcn, derive_seed(_seed, port, p));
    _eg.push_back(std::move(eg));
    auto& row = _ing.emplace_back();
    row.reserve(_cfg.num_classes);
    for (int p = 0; p < _cfg.num_classes; ++p)
        row.emplace_back(_cfg.cls[p]);
    return port;
}

void SwitchDevice::set_router(std::function<PortId(const Frame&)> route) {
    _route = std::move(route);
}

void SwitchDevice::handle_frame(PortId in_port, Frame f) {
    if (f.is_control()) {
        // CNM/ACK: forwarded without buffer accounting, ahead of DATA.
        const PortId e = _route(f);
        _eg[e].control.push_back(f);
        try_send(e);
        return;
    }

    auto& ing = _ing[in_port][f.priority];
    const auto& cc = _cfg.cls[f.priority];
    if (ing.occ + f.size > cc.partition) {
        _metrics.on_drop(f.cls, f.size, _id);
        return;
    }
    ing.occ += f.size;
    if (f.cls == FlowClass::Mice) ing.occ_mice += f.size;
    _occ_total[static_cast<int>(f.cls)] += f.size;

    if (ing.gate.on_rise(ing.occ) == PfcGate::Action::Pause) {
        _eg[in_port].out->send_pfc(f.priority, true);
        const double eleph =
            static_cast<double>(ing.occ - ing.occ_mice) / ing.occ;
        _metrics.on_pause_event(_id, f.priority, true, eleph, ing.occ > 0);
    }

    const PortId e = _route(f);
    auto& eg = _eg[e];
    eg.occ[f.priority] += f.size;
    if (f.cls == FlowClass::Mice) eg.occ_mice[f.priority] += f.size;
    const std::uint64_t qlen = eg.occ[f.priority];

    if (cc.ecn_mark && qlen >= cc.ecn_threshold) f.ecn = true;

    if (auto s = eg.cp[f.priority].on_arrival(f.size, qlen)) {
        Frame cnm;
        cnm.kind = FrameKind::Cnm;
        cnm.flow = f.flow;
        cnm.src = 0;
        cnm.dst = f.src;
        cnm.size = CONTROL_FRAME_BYTES;
        cnm.priority = f.priority;
        cnm.fb_raw = s->fb_raw;
        cnm.fb_quant = s->fb_quant;
        const double mice =
            static_cast<double>(eg.occ_mice[f.priority]) / qlen;
        _metrics.on_cnm(f.flow, s->fb_raw, s->fb_quant, mice, qlen > 0);
        const PortId ce = _route(cnm);
        _eg[ce].control.push_back(cnm);
        try_send(ce);
    }

    eg.q[f.priority].push_back({f, in_port});
    _metrics.on_stage(f.cls, f.size);
    try_send(e);
}

void SwitchDevice::handle_pfc(PortId port, std::uint8_t priority, bool pause) {
    auto& eg = _eg[port];
    if (pause)
        eg.halted |= (1u << priority);
    else {
        eg.halted &= ~(1u << priority);
        try_send(port);
    }
}

void SwitchDevice::try_send(PortId port) {
    auto& eg = _eg[port];
    if (!eg.out->idle()) return;

    if (!eg.control.empty()) {
        Frame f = eg.control.front();
        eg.control.pop_front();
        eg.out->transmit(f, [this, port] { try_send(port); });
        return;
    }

    const int p = pick_class(eg);
    if (p < 0) return;
    Staged s = eg.q[p].front();
    eg.q[p].pop_front();
    if (_cfg.scheduler == SchedulerKind::Ets) {
        eg.deficit[p] -= s.f.size;
        if (eg.deficit[p] < 0) eg.deficit[p] = 0; // zero-weight fallback serves on credit
    }
    _metrics.on_stage(s.f.cls, -static_cast<std::int64_t>(s.f.size));
    eg.out->transmit(s.f, [this, port, in_port = s.in_port, f = s.f] {
        auto& out = _eg[port];
        out.occ[f.priority] -= f.size;
        if (f.cls == FlowClass::Mice) out.occ_mice[f.priority] -= f.size;
        release_ingress(in_port, f);
        try_send(port);
    });
}

int SwitchDevice::pick_class(Egress& eg) {
    return _cfg.scheduler == SchedulerKind::Strict ? pick_strict(eg)
                                                   : pick_ets(eg);
}

int SwitchDevice::pick_strict(const Egress& eg) const {
    for (int p = _cfg.num_classes - 1; p >= 0; --p)
        if (eligible(eg, p)) return p;
    return -1;
}

int SwitchDevice::pick_ets(Egress& eg) {
    const int n = _cfg.num_classes;
    // Two rotations, not one: the first pass may merely re-arm the quantum
    // of a class whose credit ran dry mid-visit; the revisit then serves it
    // (an award always covers the head frame). Without the second pass a
    // backlogged class would yield to the zero-weight fallback every round.
    for (int tried = 0; tried < 2 * n; ++tried) {
        const int p = eg.cursor;
        if (eligible(eg, p) && _cfg.ets_weights[p] > 0.0) {
            if (!eg.awarded[p]) {
                eg.deficit[p] += _quantum[p];
                eg.awarded[p] = true;
            }
            if (eg.deficit[p] >=
                static_cast<std::int64_t>(eg.q[p].front().f.size))
                return p;
        }
        // leaving the class: drop its visit credit state
        eg.awarded[p] = false;
        if (!eligible(eg, p)) eg.deficit[p] = 0;
        eg.cursor = (p + 1) % n;
    }
    // Every positive-weight class is empty or halted; keep the link busy
    // with zero-weight classes rather than idling.
    for (int p = n - 1; p >= 0; --p)
        if (eligible(eg, p) && _cfg.ets_weights[p] == 0.0) return p;
    return -1;
}

void SwitchDevice::release_ingress(PortId in_port, const Frame& f) {
    auto& ing = _ing[in_port][f.priority];
    assert(ing.occ >= f.size);
    const std::uint64_t before = ing.occ;
    ing.occ -= f.size;
    if (f.cls == FlowClass::Mice) ing.occ_mice -= f.size;
    _occ_total[static_cast<int>(f.cls)] -= f.size;

    if (ing.gate.on_fall(before, ing.occ) == PfcGate::Action::Resume) {
        _eg[in_port].out->send_pfc(f.priority, false);
        const double eleph =
            ing.occ ? static_cast<double>(ing.occ - ing.occ_mice) / ing.occ
                    : 0.0;
        _metrics.on_pause_event(_id, f.priority, false, eleph, ing.occ > 0);
    }
}

} // namespace dcbsim
