#pragma once

#include <cstdint>

namespace seqvis {

// Small deterministic PRNG (splitmix64). Used instead of <random> engines so
// generated fixtures are byte-identical across standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    bool coin(double p_true) { return uniform() < p_true; }

    // Derives an independent stream; `purpose` keys substreams so adding or
    // skipping one draw path cannot shift another (generator reproducibility
    // depends on this).
    Rng fork(std::uint64_t purpose) const {
        Rng mixer(state_ ^ (0x632be59bd9b4e019ULL * (purpose + 1)));
        return Rng(mixer.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace seqvis
