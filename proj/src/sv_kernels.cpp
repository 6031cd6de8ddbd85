#include "qfhe/sv_kernels.hpp"

#include <atomic>

namespace qfhe {
namespace {

std::atomic<const SvKernels*> forced{nullptr};

const SvKernels* detect() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) {
        if (const SvKernels* k = avx2_kernels()) return k;
    }
#endif
    return &scalar_kernels();
}

}  // namespace

const SvKernels& active_kernels() {
    if (const SvKernels* f = forced.load(std::memory_order_relaxed)) return *f;
    static const SvKernels* selected = detect();
    return *selected;
}

void force_kernels(const SvKernels* k) { forced.store(k, std::memory_order_relaxed); }

}  // namespace qfhe
