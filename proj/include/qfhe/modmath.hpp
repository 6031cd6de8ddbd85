#pragma once

#include <bit>
#include <cstdint>

namespace qfhe {

inline uint64_t mod_add(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t r = a + b;
    if (r >= m) r -= m;
    return r;
}

inline uint64_t mod_sub(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline uint64_t mod_neg(uint64_t a, uint64_t m) {
    return a == 0 ? 0 : m - a;
}

inline uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// ceil(log2 q) for q >= 1; bits needed to index a state space of size q.
inline uint32_t ceil_log2(uint64_t q) {
    if (q <= 1) return 0;
    return static_cast<uint32_t>(std::bit_width(q - 1));
}

inline bool is_power_of_two(uint64_t q) {
    return q != 0 && (q & (q - 1)) == 0;
}

inline bool is_odd_prime(uint64_t q) {
    if (q < 3 || q % 2 == 0) return false;
    for (uint64_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

// Nearest-integer rounding of 2*v/q with half rounding up, reduced mod 2.
// This is the single rounding convention used for decryption accept sets.
inline int round_bit(uint64_t v, uint64_t q) {
    return static_cast<int>(((4 * v + q) / (2 * q)) & 1);
}

inline uint32_t decimal_digits(uint64_t v) {
    uint32_t d = 1;
    while (v >= 10) {
        v /= 10;
        ++d;
    }
    return d;
}

}  // namespace qfhe
