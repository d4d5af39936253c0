#ifndef DCBSIM_PFC_HPP
#define DCBSIM_PFC_HPP

#include <cstdint>

namespace dcbsim {

// 802.1Qbb-style per-(port, priority) Xon/Xoff thresholds, in bytes.
struct PfcConfig {
    bool enabled = false;
    std::uint32_t k1 = 25057;       // Xoff: pause above this occupancy
    std::uint32_t k2 = 12528;       // Xon: resume strictly below this
    std::uint32_t headroom = 24095; // absorbs in-flight bytes after Xoff
};

// Pure hysteresis gate over one ingress occupancy counter. The owner feeds
// it occupancy transitions and emits PAUSE/RESUME frames when told to.
class PfcGate {
public:
    enum class Action { None, Pause, Resume };

    explicit PfcGate(const PfcConfig& cfg) : _cfg(cfg) {}

    bool paused() const { return _paused; }

    // Occupancy grew to `occ` (bytes, after the arrival was admitted).
    Action on_rise(std::uint64_t occ) {
        if (!_cfg.enabled || _paused || occ <= _cfg.k1) return Action::None;
        _paused = true;
        return Action::Pause;
    }

    // Occupancy dropped from `occ_before` to `occ_after`. Resume fires on
    // the downward crossing of K2 only, so repeated drains below the
    // threshold cannot emit duplicate Xon messages.
    Action on_fall(std::uint64_t occ_before, std::uint64_t occ_after) {
        if (!_cfg.enabled || !_paused) return Action::None;
        if (occ_before >= _cfg.k2 && occ_after < _cfg.k2) {
            _paused = false;
            return Action::Resume;
        }
        return Action::None;
    }

private:
    PfcConfig _cfg;
    bool _paused = false;
};

// Headroom must cover one round trip of in-flight data plus one maximum
// frame still serializing at each end.
inline bool pfc_headroom_sufficient(std::uint32_t headroom_bytes,
                                    std::uint64_t link_bps,
                                    std::int64_t prop_delay_ps,
                                    std::uint32_t mtu_bytes) {
    // bytes in flight over 2 * propagation delay, rounded up
    const long double flight =
        2.0L * static_cast<long double>(prop_delay_ps) * 1e-12L *
        static_cast<long double>(link_bps) / 8.0L;
    return static_cast<long double>(headroom_bytes) >=
           flight + 2.0L * mtu_bytes;
}

} // namespace dcbsim

#endif
