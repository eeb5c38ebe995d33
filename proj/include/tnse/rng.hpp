#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace tnse {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-path seed derivation: counter-based hash of (base seed, index),
/// so ensemble results are independent of execution order.
inline std::uint64_t seed_for_path(std::uint64_t base, std::uint64_t path_index) {
    std::uint64_t s = base ^ (0xd1b54a32d192ed03ULL * (path_index + 1));
    return splitmix64(s);
}

/// Deterministic normal stream: xoshiro-free, portable Box-Muller over
/// splitmix64 output. No rejection, so consumption is predictable.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    double uniform() {
        // 53-bit mantissa in (0,1]; never returns 0 so log() is safe
        return (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// J independent Normal(0, dt) samples.
inline std::vector<double> wiener_increments(NormalStream& stream, std::size_t J, double dt) {
    std::vector<double> dw(J);
    const double s = std::sqrt(dt);
    for (std::size_t j = 0; j < J; ++j) dw[j] = s * stream.normal();
    return dw;
}

} // namespace tnse
