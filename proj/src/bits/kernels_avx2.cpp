// Built with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <pmx/bits/kernels.hpp>

#include <immintrin.h>

#include <bit>

namespace pmx::bits {

namespace {

// Nibble-table popcount (Mula, Kurz, Lemire): per-byte counts via vpshufb,
// folded into four 64-bit lanes with vpsadbw.
inline __m256i popcount_bytes(__m256i v)
{
    const __m256i table = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
}

inline std::size_t horizontal_sum(__m256i acc)
{
    return static_cast<std::size_t>(_mm256_extract_epi64(acc, 0)) +
        static_cast<std::size_t>(_mm256_extract_epi64(acc, 1)) +
        static_cast<std::size_t>(_mm256_extract_epi64(acc, 2)) +
        static_cast<std::size_t>(_mm256_extract_epi64(acc, 3));
}

inline __m256i load(const Word * p)
{
    return _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p));
}

std::size_t popcount_avx2(const Word * a, std::size_t n)
{
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(load(a + i)), _mm256_setzero_si256()));
    std::size_t total = horizontal_sum(acc);
    for (; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t and_popcount_avx2(const Word * a, const Word * b, std::size_t n)
{
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_and_si256(load(a + i), load(b + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
    }
    std::size_t total = horizontal_sum(acc);
    for (; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

void and_into_avx2(Word * dst, const Word * a, const Word * b, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < n; ++i)
        dst[i] = a[i] & b[i];
}

bool intersects_avx2(const Word * a, const Word * b, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_and_si256(load(a + i), load(b + i));
        if (!_mm256_testz_si256(v, v))
            return true;
    }
    for (; i < n; ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

} // namespace

const KernelTable & avx2_table()
{
    static const KernelTable table{
        "avx2", popcount_avx2, and_popcount_avx2, and_into_avx2, intersects_avx2};
    return table;
}

} // namespace pmx::bits
