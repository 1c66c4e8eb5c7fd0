#pragma once

// Seeded deterministic randomness for genericity probes.  std::mt19937_64 has
// a fully specified output sequence, so the same seed reproduces bit-identical
// runs on every platform; we do our own bounded mapping because the standard
// distributions are implementation-defined.

#include <cstdint>
#include <random>
#include <vector>

#include "rational.hpp"

namespace eds {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform-ish integer in [lo, hi].  Modulo bias is irrelevant here: draws
    // only need to hit generic points of a Zariski-open set.
    long long uniform(long long lo, long long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(eng_() % span);
    }

    // Integer-valued rational in [lo, hi].
    Rat rat(long long lo, long long hi) { return Rat(uniform(lo, hi)); }

    // Nonzero integer-valued rational in [lo, hi] (redraws on zero).
    Rat rat_nonzero(long long lo, long long hi) {
        Rat x = rat(lo, hi);
        while (x == 0) x = rat(lo, hi);
        return x;
    }

    std::vector<Rat> rat_vec(std::size_t k, long long lo, long long hi) {
        std::vector<Rat> v(k);
        for (auto& x : v) x = rat(lo, hi);
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace eds
