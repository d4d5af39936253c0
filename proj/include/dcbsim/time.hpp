#ifndef DCBSIM_TIME_HPP
#define DCBSIM_TIME_HPP

#include <cstdint>

namespace dcbsim {

// Simulated time in integer picoseconds. Picosecond resolution keeps all
// serialization delays exact for byte-sized frames on Gbps links (one bit
// at 10Gbps is 100ps), so event ordering never depends on floating point.
using SimTime = std::int64_t;

constexpr SimTime T_PS = 1;
constexpr SimTime T_NS = 1000;
constexpr SimTime T_US = 1000 * T_NS;
constexpr SimTime T_MS = 1000 * T_US;
constexpr SimTime T_SEC = 1000 * T_MS;

constexpr SimTime ps(std::int64_t v) { return v; }
constexpr SimTime ns(std::int64_t v) { return v * T_NS; }
constexpr SimTime us(std::int64_t v) { return v * T_US; }
constexpr SimTime ms(std::int64_t v) { return v * T_MS; }
constexpr SimTime sec(std::int64_t v) { return v * T_SEC; }

constexpr double to_us(SimTime t) { return static_cast<double>(t) / T_US; }
constexpr double to_sec(SimTime t) { return static_cast<double>(t) / T_SEC; }

constexpr SimTime sec_to_ps(double seconds) {
    return static_cast<SimTime>(seconds * static_cast<double>(T_SEC));
}

// Serialization delay of `bytes` on a link of `bps` bits per second,
// rounded to the nearest picosecond.
constexpr SimTime serialization_ps(std::uint64_t bytes, std::uint64_t bps) {
    using u128 = unsigned __int128;
    u128 num = static_cast<u128>(bytes) * 8u * 1'000'000'000'000ull + bps / 2;
    return static_cast<SimTime>(num / bps);
}

} // namespace dcbsim

#endif
