#include "intent/rng.hpp"

#include <cmath>
#include <numbers>

namespace intent {

double Rng::normal(double mean, double stddev) {
    // Box-Muller on two fresh uniforms; the (0,1] shift keeps log() finite.
    double u1 = 1.0 - unit();
    double u2 = unit();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        std::uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(root, 0x517cc1b727220a95ULL);
    h = mix(h, a);
    h = mix(h, b);
    h = mix(h, c);
    return h;
}

} // namespace intent
