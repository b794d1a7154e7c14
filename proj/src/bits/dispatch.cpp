#include <pmx/bits/kernels.hpp>

#include <cstdlib>
#include <string_view>

namespace pmx::bits {

#if defined(PMX_HAVE_AVX2)
const KernelTable & avx2_table();
#endif
#if defined(PMX_HAVE_NEON)
const KernelTable & neon_table();
#endif

const KernelTable * avx2_kernels()
{
#if defined(PMX_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    return supported ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable * neon_kernels()
{
#if defined(PMX_HAVE_NEON)
    return &neon_table();
#else
    return nullptr;
#endif
}

const KernelTable & active_kernels()
{
    static const KernelTable & chosen = [] () -> const KernelTable & {
        const char * forced = std::getenv("PMX_KERNELS");
        if (forced && std::string_view{forced} == "scalar")
            return scalar_kernels();
        if (auto * t = avx2_kernels())
            return *t;
        if (auto * t = neon_kernels())
            return *t;
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace pmx::bits
