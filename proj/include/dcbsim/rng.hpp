#ifndef DCBSIM_RNG_HPP
#define DCBSIM_RNG_HPP

#include <cstdint>

namespace dcbsim {

// splitmix64 finalizer: decorrelates derived seeds and flow hashes.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt,
                                    std::uint64_t index) {
    return mix64(base ^ mix64(salt ^ mix64(index)));
}

} // namespace dcbsim

#endif
