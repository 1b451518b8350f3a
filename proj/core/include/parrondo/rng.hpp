#pragma once

#include <cstdint>

namespace parrondo {

// xoshiro256++ with splitmix64 seeding. Stream splitting: state is seeded
// from splitmix64(seed ^ (stream+1) * 0x9e3779b97f4a7c15), so distinct
// (seed, stream) pairs give independent, reproducible sequences. Streams let
// parallel replicas share one user-facing seed.
class xoshiro256pp {
  public:
    using result_type = std::uint64_t;

    explicit xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t sm = seed ^ ((stream + 1) * 0x9e3779b97f4a7c15ull);
        for (auto& word : s_) {
            sm += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            word = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by Lemire's multiply-shift rejection.
    std::uint64_t below(std::uint64_t bound) {
        while (true) {
            std::uint64_t x = (*this)();
            __uint128_t m = __uint128_t(x) * bound;
            std::uint64_t lo = std::uint64_t(m);
            if (lo >= bound || lo >= (-bound) % bound) return std::uint64_t(m >> 64);
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace parrondo
