#ifndef DCBSIM_QCN_HPP
#define DCBSIM_QCN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "dcbsim/time.hpp"

namespace dcbsim {

// Congestion-point parameters (one CP per sampled ingress queue).
struct QcnCpConfig {
    bool enabled = false;
    std::uint32_t q_eq = 30720;             // equilibrium occupancy, bytes
    double w = 2.0;                          // weight on queue growth term
    std::uint32_t sample_interval = 153600;  // mean bytes between samples
    double sample_jitter = 0.30;             // uniform +/- fraction
    std::uint8_t fb_max = 63;                // quantization ceiling

    // One quantization step. Fb spans roughly (1 + 2w) * q_eq around the
    // operating point, so this maps that span onto [1, fb_max].
    double quant_unit() const {
        return (1.0 + 2.0 * w) * static_cast<double>(q_eq) / fb_max;
    }
};

// Byte-driven queue sampler: every ~sample_interval arrived bytes, compute
// Fb = (Q - q_eq) + w * (Q - q_old) and, when positive, tell the owner to
// address a CNM to the sampled frame's source.
class CongestionPoint {
public:
    struct Sample {
        double fb_raw;
        std::uint8_t fb_quant; // in (0, fb_max]
    };

    CongestionPoint(const QcnCpConfig& cfg, std::uint64_t seed)
        : _cfg(cfg), _rng(seed), _next(draw()) {}

    // Called per admitted frame with the post-admission occupancy. Returns
    // a sample only when the byte trigger fired *and* Fb > 0.
    std::optional<Sample> on_arrival(std::uint32_t frame_bytes,
                                     std::uint64_t occupancy_after) {
        if (!_cfg.enabled) return std::nullopt;
        _since += frame_bytes;
        if (_since < _next) return std::nullopt;
        _since = 0;
        _next = draw();
        const double q = static_cast<double>(occupancy_after);
        const double fb =
            (q - _cfg.q_eq) + _cfg.w * (q - static_cast<double>(_q_old));
        _q_old = occupancy_after;
        if (fb <= 0.0) return std::nullopt;
        const auto quant = static_cast<std::uint8_t>(std::min<double>(
            _cfg.fb_max, std::max(1.0, std::floor(fb / _cfg.quant_unit()))));
        return Sample{fb, quant};
    }

private:
    std::uint64_t draw() {
        std::uniform_real_distribution<double> u(1.0 - _cfg.sample_jitter,
                                                 1.0 + _cfg.sample_jitter);
        return static_cast<std::uint64_t>(_cfg.sample_interval * u(_rng));
    }

    QcnCpConfig _cfg;
    std::mt19937_64 _rng;
    std::uint64_t _since = 0;
    std::uint64_t _next;
    std::uint64_t _q_old = 0;
};

// Reaction-point parameters (one RP per rate-limited flow).
struct QcnRpConfig {
    double gd = 1.0 / 128.0;             // multiplicative decrease gain
    std::uint64_t byte_counter = 153600; // bytes per increase stage
    SimTime timer_period = ms(15);       // increase when idle this long
    std::uint32_t fast_recovery_stages = 5;
    double r_ai = 5e6;                   // active-increase step, bits/s
    double min_rate = 1e6;               // rate floor, bits/s
};

// Source rate limiter: multiplicative decrease on CNM, then staged recovery
// (five halvings toward the pre-decrease rate, then linear probing). The
// owner drives the byte counter from transmissions and the 15ms timer from
// the event queue.
class ReactionPoint {
public:
    ReactionPoint(const QcnRpConfig& cfg, double capacity_bps)
        : _cfg(cfg), _cap(capacity_bps), _rc(capacity_bps), _rt(capacity_bps) {}

    double rate() const { return _rc; }
    double target() const { return _rt; }
    std::uint32_t stage() const { return _stage; }

    void on_cnm(std::uint8_t fb_quant) {
        _rt = _rc;
        _rc = std::max(_cfg.min_rate, _rc * (1.0 - _cfg.gd * fb_quant));
        _stage = 0;
        _bytes = 0;
    }

    // Account transmitted bytes; true when a stage completed (rate rose).
    bool on_bytes_sent(std::uint32_t bytes) {
        _bytes += bytes;
        bool rose = false;
        while (_bytes >= _cfg.byte_counter) {
            _bytes -= _cfg.byte_counter;
            increase();
            rose = true;
        }
        return rose;
    }

    // Timer-driven increase (byte counter untouched).
    void on_timer() { increase(); }

private:
    void increase() {
        ++_stage;
        if (_stage > _cfg.fast_recovery_stages)
            _rt = std::min(_cap, _rt + _cfg.r_ai);
        _rc = std::clamp((_rc + _rt) / 2.0, _cfg.min_rate, _cap);
    }

    QcnRpConfig _cfg;
    double _cap;
    double _rc, _rt;
    std::uint32_t _stage = 0;
    std::uint64_t _bytes = 0;
};

} // namespace dcbsim

#endif
