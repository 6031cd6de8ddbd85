#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qfhe/errors.hpp"
#include "qfhe/rng.hpp"

namespace qfhe {

// Toy additive LWE encryption of single bits over Z_q with binary secrets.
// Homomorphic capability is XOR/NOT only; noise is tracked as a worst-case
// integer bound so that decryption is guaranteed correct while the remaining
// budget is nonnegative. Deliberately insecure at these parameter sizes.

struct LweParams {
    uint64_t n = 0;            // secret dimension (bit count)
    uint64_t q = 0;            // ciphertext modulus, odd prime or power of two, >= 17
    uint64_t p = 2;            // plaintext modulus, fixed
    uint64_t error_bound = 0;  // max |e| for a fresh ciphertext
    uint64_t levels = 1;       // number of key levels available (L+1)
    uint64_t xor_budget = 1;   // declared max homomorphic-XOR chain length

    // Largest worst-case error magnitude that still decrypts correctly.
    uint64_t max_noise() const { return (q - 1) / 4; }
    // Remaining-XOR count carried by a fresh ciphertext.
    int64_t fresh_budget() const;
    void validate() const;  // throws ParameterError

    bool operator==(const LweParams&) const = default;
};

struct SecretKey {
    std::vector<uint8_t> bits;  // each in {0,1}, length n
    uint64_t level = 0;
};

struct PkSample {
    std::vector<uint64_t> mask;
    uint64_t body = 0;
};

struct PublicKey {
    std::vector<PkSample> samples;  // encryptions of 0 under the paired secret
    uint64_t level = 0;
};

struct LweCiphertext {
    std::vector<uint64_t> mask;  // the vector a, entries in [0, q)
    uint64_t body = 0;           // <a, s> + e + bit*floor(q/2) mod q
    uint64_t level = 0;
    int64_t noise_budget = 0;  // remaining homomorphic-XOR count

    bool operator==(const LweCiphertext&) const = default;
};

struct KeyChain {
    LweParams params;
    std::vector<std::pair<SecretKey, PublicKey>> pairs;  // one per level, 0..L
};

uint64_t inner_mod(std::span<const uint64_t> mask, std::span<const uint8_t> bits, uint64_t q);

KeyChain he_keygen(const LweParams& params, uint64_t seed);

LweCiphertext he_encrypt(const LweParams& params, const PublicKey& pk, int bit, Rng& rng);

// Deterministic Regev kernel with explicit mask and error; test vectors and
// fixtures are written against this form.
LweCiphertext encrypt_raw(const LweParams& params, const SecretKey& sk,
                          std::vector<uint64_t> mask, int64_t error, int bit);

int he_decrypt(const LweParams& params, const SecretKey& sk, const LweCiphertext& ct);

// XOR of the ciphertext bits and the plain bits. Consumes (cts-1) budget;
// NOT is the single-ciphertext case with a plain 1.
LweCiphertext he_eval_linear(const LweParams& params, std::span<const LweCiphertext> cts,
                             std::span<const int> plain_bits);

}  // namespace qfhe
