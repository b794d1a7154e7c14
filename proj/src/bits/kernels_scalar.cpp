#include <pmx/bits/kernels.hpp>

#include <bit>

namespace pmx::bits {

namespace {

std::size_t popcount_scalar(const Word * a, std::size_t n)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t and_popcount_scalar(const Word * a, const Word * b, std::size_t n)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

void and_into_scalar(Word * dst, const Word * a, const Word * b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] & b[i];
}

bool intersects_scalar(const Word * a, const Word * b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

} // namespace

const KernelTable & scalar_kernels()
{
    static const KernelTable table{
        "scalar", popcount_scalar, and_popcount_scalar, and_into_scalar, intersects_scalar};
    return table;
}

int next_set_bit(std::span<const Word> a, int from)
{
    if (from < 0)
        from = 0;
    auto w = static_cast<std::size_t>(from / word_bits);
    if (w >= a.size())
        return -1;
    Word current = a[w] & (~Word{0} << (from % word_bits));
    while (true) {
        if (current)
            return static_cast<int>(w) * word_bits + std::countr_zero(current);
        if (++w == a.size())
            return -1;
        current = a[w];
    }
}

void fill_prefix(std::span<Word> a, int count)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int lo = static_cast<int>(i) * word_bits;
        if (count >= lo + word_bits)
            a[i] = ~Word{0};
        else if (count <= lo)
            a[i] = 0;
        else
            a[i] = (Word{1} << (count - lo)) - 1;
    }
}

} // namespace pmx::bits
