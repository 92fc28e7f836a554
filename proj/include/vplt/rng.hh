/* rng.hh -- seedable randomness with exact integer-ratio Bernoulli draws */

#ifndef VPLT_RNG_HH_
#define VPLT_RNG_HH_

#include <cstdint>

namespace vplt {

/// Source of random decisions used by all samplers. Probabilities are exact
/// integer ratios so that sampler distributions can be enumerated in tests
/// without floating-point bias.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// True with probability num/den exactly. Requires num <= den, den > 0.
    virtual bool bernoulli(std::uint64_t num, std::uint64_t den) = 0;

    /// Uniform draw from [0, n). Requires n > 0.
    virtual std::uint64_t below(std::uint64_t n) = 0;
};

/// xoshiro256** -- the generator named in the CLI contract. Every randomized
/// run records the 64-bit seed it was started from.
class Xoshiro256 final : public RandomSource {
public:
    explicit Xoshiro256(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the four lanes
        std::uint64_t x = seed;
        for (auto& lane : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            lane = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    std::uint64_t below(std::uint64_t n) override {
        // rejection sampling on the top of the range keeps the draw unbiased
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit && limit != 0);
        return r % n;
    }

    bool bernoulli(std::uint64_t num, std::uint64_t den) override {
        if (num >= den) return true;
        if (num == 0) return false;
        return below(den) < num;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

} // namespace vplt

#endif // VPLT_RNG_HH_
