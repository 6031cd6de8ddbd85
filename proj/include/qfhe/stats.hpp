#pragma once

#include <cmath>
#include <cstdint>

namespace qfhe {

// Upper chi-square quantile at p = 0.999 (tests reject below p = 0.001).
// Exact-ish table for small dof, Wilson-Hilferty beyond.
inline double chi2_quantile_999(uint64_t dof) {
    static const double table[] = {0,      10.828, 13.816, 16.266, 18.467, 20.515,
                                   22.458, 24.322, 26.124, 27.877, 29.588};
    if (dof >= 1 && dof <= 10) return table[dof];
    const double z = 3.090232;  // standard normal 0.999 quantile
    double k = static_cast<double>(dof);
    double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

// One-sample chi-square statistic for a fair coin: `ones` successes in n.
inline double coin_chi2(uint64_t ones, uint64_t n) {
    double d = 2.0 * static_cast<double>(ones) - static_cast<double>(n);
    return d * d / static_cast<double>(n);
}

// Two-sample 2x2 chi-square: ones/zeros counts for two samples of sizes
// n1, n2. Returns 0 when a margin is empty.
inline double two_sample_chi2(uint64_t ones1, uint64_t n1, uint64_t ones2, uint64_t n2) {
    double a = static_cast<double>(ones1), b = static_cast<double>(n1 - ones1);
    double c = static_cast<double>(ones2), d = static_cast<double>(n2 - ones2);
    double n = a + b + c + d;
    double den = (a + b) * (c + d) * (a + c) * (b + d);
    if (den == 0.0) return 0.0;
    double det = a * d - b * c;
    return n * det * det / den;
}

}  // namespace qfhe
