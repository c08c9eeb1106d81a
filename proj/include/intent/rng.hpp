#ifndef INTENT_RNG_HPP
#define INTENT_RNG_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace intent {

// Deterministic splitmix64 stream. The standard <random> engines are
// portable but the distributions are not, so all sampling used for
// reproducible pipelines goes through this class.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Modulo bias is negligible for the small
    // bounds used here.
    std::uint64_t below(std::uint64_t bound) {
        return bound == 0 ? 0 : next_u64() % bound;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1).
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double normal(double mean, double stddev);

    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(below(items.size()))];
    }

private:
    std::uint64_t state_;
};

// Mixes a root seed with up to three stream indices. Parallel workers
// derive their streams through this so results do not depend on
// scheduling order.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a = 0, std::uint64_t b = 0,
                          std::uint64_t c = 0);

} // namespace intent

#endif
