#pragma once

// Word-parallel primitives over packed bit rows. Every kernel has a scalar
// reference implementation; wider variants (AVX2 on x86-64, NEON on AArch64)
// are selected once at startup and must agree with the reference bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pmx::bits {

using Word = std::uint64_t;
inline constexpr int word_bits = 64;

struct KernelTable {
    std::string_view name;
    std::size_t (*popcount)(const Word * a, std::size_t n);
    std::size_t (*and_popcount)(const Word * a, const Word * b, std::size_t n);
    void (*and_into)(Word * dst, const Word * a, const Word * b, std::size_t n);
    bool (*intersects)(const Word * a, const Word * b, std::size_t n);
};

const KernelTable & scalar_kernels();

// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable * avx2_kernels();
const KernelTable * neon_kernels();

// Chosen on first use: PMX_KERNELS=scalar forces the reference path,
// otherwise the widest supported variant wins.
const KernelTable & active_kernels();

inline std::size_t popcount(std::span<const Word> a)
{
    return active_kernels().popcount(a.data(), a.size());
}

inline std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b)
{
    return active_kernels().and_popcount(a.data(), b.data(), a.size());
}

inline void and_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b)
{
    active_kernels().and_into(dst.data(), a.data(), b.data(), dst.size());
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b)
{
    return active_kernels().intersects(a.data(), b.data(), a.size());
}

// Index of the first set bit at position >= from, or -1.
int next_set_bit(std::span<const Word> a, int from);

inline std::size_t words_for(int bit_count)
{
    return static_cast<std::size_t>((bit_count + word_bits - 1) / word_bits);
}

inline bool test_bit(std::span<const Word> a, int i)
{
    return (a[static_cast<std::size_t>(i / word_bits)] >> (i % word_bits)) & 1U;
}

inline void set_bit(std::span<Word> a, int i)
{
    a[static_cast<std::size_t>(i / word_bits)] |= Word{1} << (i % word_bits);
}

inline void clear_bit(std::span<Word> a, int i)
{
    a[static_cast<std::size_t>(i / word_bits)] &= ~(Word{1} << (i % word_bits));
}

// Sets bits [0, count) and clears the rest of the span.
void fill_prefix(std::span<Word> a, int count);

} // namespace pmx::bits
