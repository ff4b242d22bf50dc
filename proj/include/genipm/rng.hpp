#pragma once

#include <cstdint>
#include <cmath>

namespace genipm {

// SplitMix64 output function. Used both as a stand-alone mixer and to expand
// seeds into generator state.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Names one reproducible random stream. Any (master_seed, replication_index,
/// purpose_tag) triple maps to the same draws on every run and platform;
/// distinct triples give statistically independent streams, so replications
/// can be scheduled in any order or on any worker.
struct SeedPolicy {
    std::uint64_t master_seed = 0;
    std::uint64_t replication_index = 0;
    std::uint64_t purpose_tag = 0;

    SeedPolicy with_replication(std::uint64_t r) const { return {master_seed, r, purpose_tag}; }
    SeedPolicy with_tag(std::uint64_t t) const { return {master_seed, replication_index, t}; }
};

// FNV-1a, for deriving purpose tags from readable labels.
inline std::uint64_t purpose_tag(const char* label) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char* p = label; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 0x100000001B3ull;
    }
    return h;
}

/// xoshiro256++ stream seeded from a SeedPolicy triple via SplitMix64
/// expansion. Value-like: cheap to copy, safe to hand to a worker thread.
class Stream {
public:
    explicit Stream(const SeedPolicy& p) {
        std::uint64_t acc = mix64(p.master_seed);
        acc = mix64(acc ^ p.replication_index);
        acc = mix64(acc ^ p.purpose_tag);
        for (auto& w : s_) {
            acc += 0x9E3779B97F4A7C15ull;
            w = mix64(acc);
        }
        s_[0] |= 1;  // never all-zero
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; generates pairs, caches the second.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Derives an independent child stream, advancing this stream by two
    /// draws. Same parent state + label always gives the same child.
    Stream fork(const char* label) {
        const std::uint64_t a = next_u64();
        const std::uint64_t b = next_u64();
        return Stream(SeedPolicy{a, b, purpose_tag(label)});
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Stream make_stream(std::uint64_t master, std::uint64_t replication, std::uint64_t tag) {
    return Stream(SeedPolicy{master, replication, tag});
}

}  // namespace genipm
