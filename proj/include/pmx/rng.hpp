#pragma once

#include <cstdint>
#include <limits>

namespace pmx {

inline constexpr std::uint64_t default_seed = 0x5EED;

// SplitMix64. The stream is fully specified by the
// three constants below, so ports in other languages reproduce it bit for bit.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = default_seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) from the top 53 bits
    double uniform()
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, bound) by rejection, bound > 0
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % bound;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace pmx
