#pragma once

#include <cstdint>

namespace grounded {

/// Deterministic splitmix64 generator. Standard-library distributions are
/// implementation-defined, so all randomness in generators and campaigns goes
/// through this to keep outputs byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // Rejection sampling to avoid modulo bias.
        std::uint64_t limit = bound * (~0ull / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + int(below(std::uint64_t(hi - lo + 1)));
    }

    bool chance(double p) { return double(next() >> 11) * 0x1.0p-53 < p; }

    /// Derive an independent stream; used to give each instance of a campaign
    /// its own generator regardless of evaluation order.
    Rng fork(std::uint64_t salt) {
        Rng r(state_ ^ (salt * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull));
        r.next();
        return r;
    }

private:
    std::uint64_t state_;
};

}  // namespace grounded
