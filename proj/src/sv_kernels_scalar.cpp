#include "qfhe/sv_kernels.hpp"

namespace qfhe {
namespace {

void apply2x2_scalar(cplx* amp, size_t n, size_t qmask, const cplx m[4]) {
    for (size_t base = 0; base < n; base += 2 * qmask) {
        for (size_t i = base; i < base + qmask; ++i) {
            cplx a0 = amp[i];
            cplx a1 = amp[i + qmask];
            amp[i] = m[0] * a0 + m[1] * a1;
            amp[i + qmask] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_phase_scalar(cplx* amp, size_t n, size_t qmask, cplx phase) {
    for (size_t base = 0; base < n; base += 2 * qmask)
        for (size_t i = base + qmask; i < base + 2 * qmask; ++i) amp[i] *= phase;
}

void apply_cnot_scalar(cplx* amp, size_t n, size_t cmask, size_t tmask) {
    for (size_t i = 0; i < n; ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(amp[i], amp[i | tmask]);
}

double norm_sq_scalar(const cplx* amp, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += amp[i].real() * amp[i].real() + amp[i].imag() * amp[i].imag();
    return acc;
}

}  // namespace

const SvKernels& scalar_kernels() {
    static const SvKernels k{apply2x2_scalar, apply_phase_scalar, apply_cnot_scalar,
                             norm_sq_scalar, "scalar"};
    return k;
}

}  // namespace qfhe
