#pragma once

#include <cstdint>
#include <cmath>

namespace lppcond {

// Counter-based deterministic RNG utilities. Every random quantity is a pure
// function of (seed, counters), so parallel fills and replica fan-out are
// reproducible by construction.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in (0,1), keyed by (seed, i, j).
inline double cell_u01(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    std::uint64_t h = mix64(mix64(seed ^ 0x6a09e667f3bcc908ULL) + i);
    h = mix64(h ^ (j * 0x9e3779b97f4a7c15ULL));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// Mean-1 exponential via inverse CDF.
inline double cell_exponential(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    return -std::log1p(-cell_u01(seed, i, j));
}

// Small counter-based stream for scalar draws (normals etc.).
class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(mix64(seed ^ mix64(stream))) {}

    double u01() { return cell_u01(seed_, 0x5bf0a8b1u, n_++); }

    // Box-Muller standard normal (uses two uniforms per pair, caches the second).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = u01(), u2 = u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

private:
    std::uint64_t seed_;
    std::uint64_t n_ = 0;
    bool has_spare_ = false;
    double spare_ = 0;
};

} // namespace lppcond
