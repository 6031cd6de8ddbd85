#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qfhe {

using cplx = std::complex<double>;

// Inner loops of the dense simulator. Scalar kernels are the reference
// semantics; the AVX2 variant is selected at runtime when the CPU supports it
// and is equivalence-tested against the scalar path.
struct SvKernels {
    // amp has n = 2^k entries; qmask = 1 << target_bit.
    // In-place: (a0', a1') = M * (a0, a1) over all index pairs.
    void (*apply2x2)(cplx* amp, size_t n, size_t qmask, const cplx m[4]);
    // Multiply amplitudes whose target bit is 1 by `phase`.
    void (*apply_phase)(cplx* amp, size_t n, size_t qmask, cplx phase);
    // Swap amplitude pairs where the control bit is 1 (CNOT).
    void (*apply_cnot)(cplx* amp, size_t n, size_t cmask, size_t tmask);
    // Sum of |amp|^2.
    double (*norm_sq)(const cplx* amp, size_t n);
    const char* name;
};

const SvKernels& scalar_kernels();
// Null when this build or CPU cannot run AVX2.
const SvKernels* avx2_kernels();
// Runtime-selected kernel set (AVX2 when available, else scalar).
const SvKernels& active_kernels();
// Test hook; nullptr restores automatic selection.
void force_kernels(const SvKernels* k);

}  // namespace qfhe
