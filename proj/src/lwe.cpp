#include "qfhe/lwe.hpp"

#include <algorithm>

#include "qfhe/modmath.hpp"

namespace qfhe {
namespace {

// Worst-case error bound recovered from a remaining-XOR count. Conservative:
// quantized upward to whole steps. With error_bound 0 the unit is the odd-q
// wraparound drift, which is the only noise source left.
uint64_t bound_from_budget(const LweParams& p, int64_t budget) {
    uint64_t step = p.error_bound == 0 ? 1 : p.error_bound;
    uint64_t claimed = static_cast<uint64_t>(budget) * step;
    return claimed >= p.max_noise() ? 0 : p.max_noise() - claimed;
}

int64_t budget_from_bound(const LweParams& p, uint64_t bound) {
    uint64_t step = p.error_bound == 0 ? 1 : p.error_bound;
    if (bound > p.max_noise()) return -1;
    return static_cast<int64_t>((p.max_noise() - bound) / step);
}

}  // namespace

int64_t LweParams::fresh_budget() const {
    return budget_from_bound(*this, error_bound == 0 ? 0 : error_bound);
}

void LweParams::validate() const {
    if (n < 1) throw ParameterError("lwe: dimension must be >= 1");
    if (p != 2) throw ParameterError("lwe: plaintext modulus is fixed to 2");
    if (q < 17) throw ParameterError("lwe: modulus must be >= 17");
    if (!is_power_of_two(q) && !is_odd_prime(q))
        throw ParameterError("lwe: modulus must be an odd prime or a power of two");
    if (levels < 1) throw ParameterError("lwe: at least one key level required");
    // Correctness of every chain up to the declared budget needs
    // q > 4 * error_bound * (xor_budget + 1).
    if (error_bound > 0 && q <= 4 * error_bound * (xor_budget + 1))
        throw ParameterError("lwe: modulus too small for the declared XOR budget");
}

uint64_t inner_mod(std::span<const uint64_t> mask, std::span<const uint8_t> bits, uint64_t q) {
    uint64_t acc = 0;
    for (size_t i = 0; i < mask.size(); ++i)
        if (bits[i]) acc = mod_add(acc, mask[i] % q, q);
    return acc;
}

KeyChain he_keygen(const LweParams& params, uint64_t seed) {
    params.validate();
    KeyChain chain;
    chain.params = params;
    Rng root(seed);
    for (uint64_t lvl = 0; lvl < params.levels; ++lvl) {
        Rng lr = root.stream(lvl);
        SecretKey sk;
        sk.level = lvl;
        sk.bits.resize(params.n);
        for (auto& b : sk.bits) b = static_cast<uint8_t>(lr.bit());

        // Zero-error encryptions of 0; the fresh error is added per encryption
        // so the declared per-ciphertext bound stays exact. Enough samples
        // that subset-sum bodies mix mod q even at tiny dimensions.
        PublicKey pk;
        pk.level = lvl;
        pk.samples.resize(std::max<uint64_t>(2 * params.n, 32));
        for (auto& s : pk.samples) {
            s.mask.resize(params.n);
            for (auto& m : s.mask) m = lr.below(params.q);
            s.body = inner_mod(s.mask, sk.bits, params.q);
        }
        chain.pairs.emplace_back(std::move(sk), std::move(pk));
    }
    return chain;
}

LweCiphertext he_encrypt(const LweParams& params, const PublicKey& pk, int bit, Rng& rng) {
    if (bit != 0 && bit != 1) throw InputError("lwe: message must be a bit");
    LweCiphertext ct;
    ct.level = pk.level;
    ct.mask.assign(params.n, 0);
    ct.body = 0;
    for (const auto& s : pk.samples) {
        if (!rng.bit()) continue;
        for (uint64_t i = 0; i < params.n; ++i) ct.mask[i] = mod_add(ct.mask[i], s.mask[i], params.q);
        ct.body = mod_add(ct.body, s.body, params.q);
    }
    int64_t e = params.error_bound == 0
                    ? 0
                    : rng.range(-static_cast<int64_t>(params.error_bound),
                                static_cast<int64_t>(params.error_bound));
    uint64_t eq = e >= 0 ? static_cast<uint64_t>(e) : mod_neg(static_cast<uint64_t>(-e), params.q);
    ct.body = mod_add(ct.body, eq % params.q, params.q);
    if (bit) ct.body = mod_add(ct.body, params.q / 2, params.q);
    ct.noise_budget = params.fresh_budget();
    return ct;
}

LweCiphertext encrypt_raw(const LweParams& params, const SecretKey& sk,
                          std::vector<uint64_t> mask, int64_t error, int bit) {
    if (mask.size() != params.n) throw InputError("lwe: mask arity mismatch");
    LweCiphertext ct;
    ct.level = sk.level;
    ct.body = inner_mod(mask, sk.bits, params.q);
    uint64_t eq = error >= 0 ? static_cast<uint64_t>(error) % params.q
                             : mod_neg(static_cast<uint64_t>(-error) % params.q, params.q);
    ct.body = mod_add(ct.body, eq, params.q);
    if (bit) ct.body = mod_add(ct.body, params.q / 2, params.q);
    ct.mask = std::move(mask);
    ct.noise_budget = params.fresh_budget();
    return ct;
}

int he_decrypt(const LweParams& params, const SecretKey& sk, const LweCiphertext& ct) {
    if (sk.level != ct.level) throw KeyLevelError("lwe: decrypt with key of wrong level");
    if (ct.mask.size() != sk.bits.size()) throw InputError("lwe: mask/key arity mismatch");
    uint64_t phase = mod_sub(ct.body, inner_mod(ct.mask, sk.bits, params.q), params.q);
    return round_bit(phase, params.q);
}

LweCiphertext he_eval_linear(const LweParams& params, std::span<const LweCiphertext> cts,
                             std::span<const int> plain_bits) {
    if (cts.empty()) throw InputError("lwe: eval_linear needs at least one ciphertext");
    const uint64_t lvl = cts.front().level;
    uint64_t bound = 0;
    LweCiphertext out;
    out.level = lvl;
    out.mask.assign(params.n, 0);
    out.body = 0;
    for (const auto& ct : cts) {
        if (ct.level != lvl) throw KeyLevelError("lwe: eval_linear across key levels");
        if (ct.noise_budget < 0) throw NoiseError("lwe: operand past its noise budget");
        bound += bound_from_budget(params, ct.noise_budget);
        for (uint64_t i = 0; i < params.n; ++i) out.mask[i] = mod_add(out.mask[i], ct.mask[i], params.q);
        out.body = mod_add(out.body, ct.body, params.q);
    }
    uint64_t ones = 0;
    for (int b : plain_bits) {
        if (b != 0 && b != 1) throw InputError("lwe: plain bits must be 0/1");
        ones += static_cast<uint64_t>(b);
    }
    // Plain bits fold to their parity before touching the body, so they are
    // exact and free of noise.
    if (ones % 2) out.body = mod_add(out.body, params.q / 2, params.q);
    // For odd q the two halves of the encoding differ by one, so every
    // ciphertext combination step can shift the phase by one extra unit.
    if (params.q % 2 == 1) bound += cts.size() - 1;
    int64_t budget = budget_from_bound(params, bound);
    if (budget < 0) throw NoiseError("lwe: XOR budget exhausted");
    out.noise_budget = budget;
    return out;
}

}  // namespace qfhe
