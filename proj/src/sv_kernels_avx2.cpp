#include "qfhe/sv_kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace qfhe {
namespace {

// A __m256d holds two interleaved complex doubles: [re0, im0, re1, im1].
inline __m256d cmul(__m256d x, __m256d y) {
    __m256d yr = _mm256_movedup_pd(y);                    // [yr0 yr0 yr1 yr1]
    __m256d yi = _mm256_unpackhi_pd(y, y);                // [yi0 yi0 yi1 yi1]
    __m256d xs = _mm256_permute_pd(x, 0x5);               // [im0 re0 im1 re1]
    return _mm256_addsub_pd(_mm256_mul_pd(x, yr), _mm256_mul_pd(xs, yi));
}

inline __m256d broadcast_c(cplx c) {
    return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
}

void apply2x2_avx2(cplx* amp, size_t n, size_t qmask, const cplx m[4]) {
    double* d = reinterpret_cast<double*>(amp);
    if (qmask < 2) {
        // Adjacent pairs do not pack into lanes; reference loop.
        for (size_t i = 0; i < n; i += 2) {
            cplx a0 = amp[i], a1 = amp[i + 1];
            amp[i] = m[0] * a0 + m[1] * a1;
            amp[i + 1] = m[2] * a0 + m[3] * a1;
        }
        return;
    }
    const __m256d m0 = broadcast_c(m[0]), m1 = broadcast_c(m[1]);
    const __m256d m2 = broadcast_c(m[2]), m3 = broadcast_c(m[3]);
    for (size_t base = 0; base < n; base += 2 * qmask) {
        for (size_t i = base; i < base + qmask; i += 2) {
            __m256d a0 = _mm256_loadu_pd(d + 2 * i);
            __m256d a1 = _mm256_loadu_pd(d + 2 * (i + qmask));
            __m256d r0 = _mm256_add_pd(cmul(a0, m0), cmul(a1, m1));
            __m256d r1 = _mm256_add_pd(cmul(a0, m2), cmul(a1, m3));
            _mm256_storeu_pd(d + 2 * i, r0);
            _mm256_storeu_pd(d + 2 * (i + qmask), r1);
        }
    }
}

void apply_phase_avx2(cplx* amp, size_t n, size_t qmask, cplx phase) {
    double* d = reinterpret_cast<double*>(amp);
    if (qmask < 2) {
        for (size_t i = 1; i < n; i += 2) amp[i] *= phase;
        return;
    }
    const __m256d ph = broadcast_c(phase);
    for (size_t base = 0; base < n; base += 2 * qmask)
        for (size_t i = base + qmask; i < base + 2 * qmask; i += 2) {
            __m256d a = _mm256_loadu_pd(d + 2 * i);
            _mm256_storeu_pd(d + 2 * i, cmul(a, ph));
        }
}

void apply_cnot_avx2(cplx* amp, size_t n, size_t cmask, size_t tmask) {
    double* d = reinterpret_cast<double*>(amp);
    if (tmask < 2 && cmask < 2) {
        for (size_t i = 0; i < n; ++i)
            if ((i & cmask) && !(i & tmask)) std::swap(amp[i], amp[i | tmask]);
        return;
    }
    size_t lo = tmask < cmask ? tmask : cmask;
    if (lo < 2) {
        for (size_t i = 0; i < n; ++i)
            if ((i & cmask) && !(i & tmask)) std::swap(amp[i], amp[i | tmask]);
        return;
    }
    for (size_t i = 0; i < n; i += 2) {
        if ((i & cmask) && !(i & tmask)) {
            __m256d a = _mm256_loadu_pd(d + 2 * i);
            __m256d b = _mm256_loadu_pd(d + 2 * (i | tmask));
            _mm256_storeu_pd(d + 2 * i, b);
            _mm256_storeu_pd(d + 2 * (i | tmask), a);
        }
    }
}

double norm_sq_avx2(const cplx* amp, size_t n) {
    const double* d = reinterpret_cast<const double*>(amp);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(d + 2 * i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, a));
    }
    double buf[4];
    _mm256_storeu_pd(buf, acc);
    double total = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) total += amp[i].real() * amp[i].real() + amp[i].imag() * amp[i].imag();
    return total;
}

}  // namespace

const SvKernels* avx2_kernels() {
    static const SvKernels k{apply2x2_avx2, apply_phase_avx2, apply_cnot_avx2, norm_sq_avx2,
                             "avx2"};
    return &k;
}

}  // namespace qfhe

#else

namespace qfhe {
const SvKernels* avx2_kernels() { return nullptr; }
}  // namespace qfhe

#endif
