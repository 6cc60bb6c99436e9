#pragma once

#include <cstdint>
#include <random>

namespace ptolemy {

// splitmix64: cheap stateless scrambler used to derive independent per-item
// seeds from a (master seed, index) pair. Workers that process disjoint index
// ranges therefore draw from identical per-item streams no matter how the
// range is partitioned.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Deterministic double in [0,1). mt19937_64 is fully specified by the
// standard, and the 53-bit mapping below avoids the implementation-defined
// behaviour of std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace ptolemy
