#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace pfcm {

// splitmix64 finalizer. Used both to decorrelate user seeds and as the
// documented mix function of the per-trial seeding contract (see experiment.hpp).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic random source. Draws are defined entirely by mt19937_64 plus
// the arithmetic below, so identical seeds give identical streams on every
// platform; none of the distribution classes from <random> are used because
// their algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform on {0, ..., bound-1} via 128-bit multiply-shift
    std::size_t next_index(std::size_t bound) {
        const auto r = static_cast<unsigned __int128>(next_u64());
        return static_cast<std::size_t>((r * bound) >> 64);
    }

    // standard normal via Box-Muller; two uniforms per draw, no cached spare
    double next_normal() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // k distinct indices from {0, ..., n-1}, in draw order
    std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k) {
        std::vector<std::size_t> picked;
        picked.reserve(k);
        while (picked.size() < k) {
            const std::size_t cand = next_index(n);
            bool seen = false;
            for (const std::size_t p : picked) seen = seen || (p == cand);
            if (!seen) picked.push_back(cand);
        }
        return picked;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pfcm
