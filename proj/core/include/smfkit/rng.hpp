#ifndef SMFKIT_RNG_HPP
#define SMFKIT_RNG_HPP

#include <cstdint>

namespace smfkit::rng {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over the <random> engines
// because the output sequence is fixed by this header, not by the standard
// library vendor, which keeps seeded runs portable across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) from the top 53 bits of one output word.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // lo + u * (hi - lo); degenerate intervals return lo.
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

private:
    std::uint64_t state_;
};

// Counter-based stream derivation: stream(base, i) and stream(base, j) are
// decorrelated splitmix seeds for i != j. Used to give every run, and every
// sampling stage inside a run, its own deterministic stream so that results
// do not depend on scheduling or worker count.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace smfkit::rng

#endif
