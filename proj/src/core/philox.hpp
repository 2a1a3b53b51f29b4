#ifndef LGPOLY_PHILOX_HPP
#define LGPOLY_PHILOX_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace lgp::rng {

// Philox 4x64 with 10 rounds. Counter-based: every 256-bit output block is a
// pure function of (key, counter), so lattice sites can be sampled in any
// order, on any number of threads, with identical results.
struct Philox4x64 {
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                        std::uint64_t& lo) {
        unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static std::array<std::uint64_t, 4> round(const std::array<std::uint64_t, 4>& c,
                                              const std::array<std::uint64_t, 2>& k) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                              std::array<std::uint64_t, 2> key) {
        for (int r = 0; r < 9; ++r) {
            ctr = round(ctr, key);
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return round(ctr, key);
    }
};

// Stream of uniforms/normals for one lattice site of one Monte Carlo sample.
// Counter layout: {sample, site, block, 0}; key: {seed, stream tag}.
class SiteStream {
public:
    SiteStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t sample,
               std::uint64_t site)
        : key_{seed, tag}, ctr_{sample, site, 0, 0}, lane_(4) {}

    std::uint64_t next_u64() {
        if (lane_ == 4) {
            buf_ = Philox4x64::block(ctr_, key_);
            ++ctr_[2];
            lane_ = 0;
        }
        return buf_[lane_++];
    }

    // Uniform on the open interval (0, 1).
    double u01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Standard normal via Box-Muller (cosine branch).
    double normal() {
        double u1 = u01();
        double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.28318530717958647692 * u2);
    }

private:
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_;
    std::array<std::uint64_t, 4> buf_{};
    int lane_;
};

} // namespace lgp::rng

#endif
