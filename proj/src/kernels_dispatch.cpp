#include "memfract/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace memfract::kernels {

bool avx2_available() {
#if defined(MEMFRACT_KERNELS_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

#if !defined(MEMFRACT_KERNELS_AVX2_TU)
const Kernels& avx2() { return scalar(); }
#endif

namespace {

const Kernels& select() {
    if (const char* env = std::getenv("MEMFRACT_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return scalar();
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2();
    }
    return avx2_available() ? avx2() : scalar();
}

} // namespace

const Kernels& active() {
    static const Kernels& k = select();
    return k;
}

} // namespace memfract::kernels
