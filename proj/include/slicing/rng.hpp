#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace slicing {

// Counter-based random numbers (Philox4x32-10). Every consumer of
// randomness owns a substream identified by a 64-bit key derived from the
// base seed plus integer labels; the generator state is just (key, block
// counter), so any substream can be recreated independently of execution
// order. This is what makes table builds and sweeps bit-identical for any
// worker count.

namespace detail {

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Domain tags keeping unrelated substreams apart. Values are arbitrary
/// but frozen: changing them changes every sampled number.
enum : uint64_t {
    kStreamTableCell = 0x7461626c65ULL,   // outage table cells
    kStreamVerify = 0x766572696679ULL,    // post-allocation outage verification
    kStreamPlacement = 0x706c616365ULL,   // eMBB placement draws
    kStreamGeneric = 0x67656e65ULL,       // standalone mc_outage calls
};

/// Derives a substream key from the base seed and up to three labels.
inline uint64_t substream_key(uint64_t seed, uint64_t domain, uint64_t a = 0, uint64_t b = 0,
                              uint64_t c = 0) {
    uint64_t h = detail::mix64(seed);
    h = detail::mix64(h ^ domain);
    h = detail::mix64(h ^ a);
    h = detail::mix64(h ^ b);
    h = detail::mix64(h ^ c);
    return h;
}

/// Philox4x32-10 block function: 128-bit counter, 64-bit key, 128-bit output.
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    constexpr uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    auto round = [](std::array<uint32_t, 4>& c, const std::array<uint32_t, 2>& k) {
        const uint64_t p0 = static_cast<uint64_t>(M0) * c[0];
        const uint64_t p1 = static_cast<uint64_t>(M1) * c[2];
        const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
        const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    };
    round(ctr, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += W0;
        key[1] += W1;
        round(ctr, key);
    }
    return ctr;
}

/// Sequential view of one substream: u64 / uniform / exponential draws.
class RngStream {
public:
    explicit RngStream(uint64_t key) : key_{static_cast<uint32_t>(key), static_cast<uint32_t>(key >> 32)} {}

    uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const std::array<uint32_t, 4> out = philox4x32(
            {static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32), 0u, 0u}, key_);
        ++block_;
        spare_ = (static_cast<uint64_t>(out[3]) << 32) | out[2];
        have_spare_ = true;
        return (static_cast<uint64_t>(out[1]) << 32) | out[0];
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exp(1) via inversion; finite because 1 - u >= 2^-53.
    double next_exp() { return -std::log1p(-next_uniform()); }

private:
    std::array<uint32_t, 2> key_;
    uint64_t block_ = 0;
    uint64_t spare_ = 0;
    bool have_spare_ = false;
};

} // namespace slicing
