#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace bdpp {

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC'11). Stateless: every 128-bit counter /
// 64-bit key pair maps to an independent 128-bit block, which is what makes
// per-(seed, path, step) keying of increments possible.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0  = 0xD2511F53u;
    static constexpr std::uint32_t kMul1  = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

// Counter word 3 tags the consumer so every random-number user of a
// (seed, path) pair draws from a disjoint slice of the counter space.
enum class StreamKind : std::uint32_t {
    kBrownian  = 0,  // per-step Gaussian increments
    kSwitching = 1,  // CTMC holding times and jump targets
};

// Maps 64 random bits to (0,1), never hitting either endpoint.
inline double to_unit_interval(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline std::uint64_t join_words(std::uint32_t hi, std::uint32_t lo) {
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

// Two standard normals (Box-Muller) from the block addressed by
// (seed, path, kind, major, minor). The integrator uses major = base step
// index and minor = sub-step index within the base step.
inline std::pair<double, double> normal_pair(std::uint64_t seed, std::uint32_t path_id,
                                             StreamKind kind, std::uint32_t major,
                                             std::uint32_t minor) {
    const auto w = Philox4x32::block(
        {major, minor, path_id, static_cast<std::uint32_t>(kind)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    const double u1 = to_unit_interval(join_words(w[0], w[1]));
    const double u2 = to_unit_interval(join_words(w[2], w[3]));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

// Sequential stream of uniforms on (0,1) over the (seed, path, kind)
// partition; two draws per Philox block.
class UniformStream {
public:
    UniformStream(std::uint64_t seed, std::uint32_t path_id, std::uint32_t kind)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_id_(path_id), kind_(kind) {}

    UniformStream(std::uint64_t seed, std::uint32_t path_id, StreamKind kind)
        : UniformStream(seed, path_id, static_cast<std::uint32_t>(kind)) {}

    double next() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const auto w = Philox4x32::block({block_index_, 0u, path_id_, kind_}, key_);
        ++block_index_;
        cached_ = to_unit_interval(join_words(w[2], w[3]));
        have_cached_ = true;
        return to_unit_interval(join_words(w[0], w[1]));
    }

    double next_exponential(double rate) {
        return -std::log(next()) / rate;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_id_;
    std::uint32_t kind_;
    std::uint32_t block_index_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace bdpp
