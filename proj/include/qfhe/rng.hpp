#pragma once

#include <cstdint>

namespace qfhe {

// Deterministic splitmix64 generator with explicit stream splitting.
//
// A generator remembers the seed it was created from; stream(tag) derives a
// child generator from (seed, tag) only, independent of how many values were
// drawn. Teleportation transcripts key their streams by pipe-end id
// (2*pipe_id + side), so a run is reproducible across platforms and across
// measurement orderings.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    int bit() { return static_cast<int>(next() >> 63); }

    // Uniform in [0, n), unbiased.
    uint64_t below(uint64_t n) {
        const uint64_t limit = ~0ull - ~0ull % n;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Child stream derived from the creation seed and a tag.
    Rng stream(uint64_t tag) const {
        uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ull * (tag + 0x632be59bd9b4e019ull));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    uint64_t state_;
};

}  // namespace qfhe
