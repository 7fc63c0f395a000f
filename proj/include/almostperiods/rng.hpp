#pragma once

#include <cstdint>

namespace almostperiods {

// Seeded splittable generator used by every randomized suite.
// State: one 64-bit word.  Update: state += 0x9E3779B97F4A7C15 (the
// splitmix64 increment), output = mix of the new state per Steele et al.
// All implementations replaying a (job, seed) pair reproduce the same
// stream, and split(i) derives an independent stream per work item so
// parallel suites stay order-independent.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // derive an independent generator for work item i
    SplitMix64 split(uint64_t i) const {
        SplitMix64 g(state ^ (0xA3EC647659359ACDULL * (i + 1)));
        g.next();
        return g;
    }

    // uniform in [0, bound)
    uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }
};

} // namespace almostperiods
