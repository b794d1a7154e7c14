#include <pmx/bits/kernels.hpp>

#include <arm_neon.h>

#include <bit>

namespace pmx::bits {

namespace {

std::size_t popcount_neon(const Word * a, std::size_t n)
{
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint8x16_t counts = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(counts))));
    }
    std::size_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t and_popcount_neon(const Word * a, const Word * b, std::size_t n)
{
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        const uint8x16_t counts = vcntq_u8(vreinterpretq_u8_u64(v));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(counts))));
    }
    std::size_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

void and_into_neon(Word * dst, const Word * a, const Word * b, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i)
        dst[i] = a[i] & b[i];
}

bool intersects_neon(const Word * a, const Word * b, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1))
            return true;
    }
    for (; i < n; ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

} // namespace

const KernelTable & neon_table()
{
    static const KernelTable table{
        "neon", popcount_neon, and_popcount_neon, and_into_neon, intersects_neon};
    return table;
}

} // namespace pmx::bits
