#ifndef BOOTPERC_RNG_HPP
#define BOOTPERC_RNG_HPP

#include <cstdint>

namespace bootperc {

// Counter-based random stream. Every output is a pure function of
// (master_seed, stream_id, counter), so draws can be indexed directly
// (uniform_at) and parallel consumers stay reproducible regardless of
// execution order. The sequential interface (next_uniform etc.) just
// advances an internal counter.
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0)
        : master_seed_(master_seed), stream_id_(stream_id),
          key_(mix(mix(master_seed + kGolden) ^ mix(stream_id + kLeap))) {}

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t bits_at(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * kGolden);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform_at(std::uint64_t counter) const {
        return static_cast<double>(bits_at(counter) >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_bits() { return bits_at(counter_++); }
    double next_uniform() { return uniform_at(counter_++); }

    // Unbiased integer in [0, bound) via multiply-shift rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        for (;;) {
            std::uint64_t x = next_bits();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (0 - bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kLeap = 0xD1B54A32D192ED03ull;

    // SplitMix64 finalizer (Vigna); full-avalanche bijection on 64 bits.
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace bootperc

#endif
