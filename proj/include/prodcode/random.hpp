#pragma once

#include <cstdint>
#include <limits>

namespace prodcode {

/// SplitMix64: a 64-bit generator whose output is fully specified here, so
/// seeded simulations reproduce bit-for-bit on any platform. `split`
/// derives an independent child stream.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    SplitMix64 split() noexcept { return SplitMix64((*this)() ^ 0x6a09e667f3bcc909ULL); }

    /// Stream number `index` derived from `seed` without consuming state.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
        SplitMix64 base(seed ^ (index * 0xd1b54a32d192ed03ULL));
        return base.split();
    }

    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t v;
        do v = (*this)();
        while (v >= limit);
        return v % bound;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace prodcode
