#include <doctest.h>

#include "qfhe/fixtures.hpp"
#include "qfhe/json_io.hpp"
#include "qfhe/lwe.hpp"
#include "qfhe/modmath.hpp"

using namespace qfhe;

TEST_CASE("keygen is deterministic and level-independent") {
    LweParams p{4, 17, 2, 1, 2, 3};
    KeyChain a = he_keygen(p, 7);
    KeyChain b = he_keygen(p, 7);
    CHECK(a.pairs.size() == 2);
    CHECK(keychain_to_json(a) == keychain_to_json(b));
    KeyChain c = he_keygen(p, 8);
    CHECK(keychain_to_json(a) != keychain_to_json(c));
    CHECK(a.pairs[0].first.bits != a.pairs[1].first.bits);  // seed 7 happens to differ
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((LweParams{4, 8, 2, 2, 1, 1}.validate()), ParameterError);   // q <= 4*eb*2
    CHECK_THROWS_AS((LweParams{0, 17, 2, 1, 1, 1}.validate()), ParameterError);  // n
    CHECK_THROWS_AS((LweParams{4, 17, 3, 1, 1, 1}.validate()), ParameterError);  // p
    CHECK_THROWS_AS((LweParams{4, 15, 2, 1, 1, 1}.validate()), ParameterError);  // composite odd
    CHECK_THROWS_AS((LweParams{4, 16, 2, 1, 1, 2}.validate()), ParameterError);  // q <= 4*1*3
    CHECK_NOTHROW((LweParams{4, 17, 2, 1, 1, 3}.validate()));
    CHECK_NOTHROW((LweParams{4, 32, 2, 1, 1, 6}.validate()));
}

TEST_CASE("tabulated 128-bit parameters generate keys") {
    LweParams p{512, uint64_t{1} << 16, 2, 20, 1, 100};
    p.validate();
    KeyChain chain = he_keygen(p, 3);
    CHECK(chain.pairs.size() == 1);
    const auto& [sk, pk] = chain.pairs[0];
    CHECK(sk.bits.size() == 512);
    // Mask storage per sample: n entries of ceil(log2 q) bits.
    CHECK(pk.samples[0].mask.size() * ceil_log2(p.q) == 512 * 16);
    for (const auto& s : pk.samples) {
        LweCiphertext zero{s.mask, s.body, 0, p.fresh_budget()};
        CHECK(he_decrypt(p, sk, zero) == 0);
    }
}

TEST_CASE("raw encryption matches the worked arithmetic") {
    T1Fixture t1 = t1_fixture();
    CHECK(t1.ct.body == 13);  // 4 + 1 + 8 mod 17
    CHECK(inner_mod(t1.ct.mask, t1.sk.bits, 17) == 4);

    LweCiphertext zero = encrypt_raw(t1.params, t1.sk, {0, 0, 0, 0}, 0, 0);
    CHECK(zero.body == 0);
    CHECK(he_decrypt(t1.params, t1.sk, zero) == 0);
}

TEST_CASE("decryption rounds the phase") {
    T1Fixture t1 = t1_fixture();
    CHECK(he_decrypt(t1.params, t1.sk, t1.ct) == 1);  // phase 9 -> 1
    LweCiphertext exact = encrypt_raw(t1.params, t1.sk, {3, 5, 7, 11}, 0, 0);
    CHECK(he_decrypt(t1.params, t1.sk, exact) == 0);
    SecretKey other{{1, 1, 0, 0}, 1};
    CHECK_THROWS_AS(he_decrypt(t1.params, other, t1.ct), KeyLevelError);
}

TEST_CASE("accept zone for q=17") {
    auto acc = lwe_accept_set(17);
    CHECK(acc == std::vector<uint64_t>({5, 6, 7, 8, 9, 10, 11, 12}));
}

TEST_CASE("fresh encryptions always decrypt") {
    T1Fixture t1 = t1_fixture();
    KeyChain chain = he_keygen(t1.params, 11);
    Rng rng(99);
    for (int bit = 0; bit < 2; ++bit)
        for (int i = 0; i < 1000; ++i) {
            LweCiphertext ct = he_encrypt(t1.params, chain.pairs[0].second, bit, rng);
            CHECK(he_decrypt(t1.params, chain.pairs[0].first, ct) == bit);
        }
}

TEST_CASE("linear evaluation computes XOR") {
    T1Fixture t1 = t1_fixture();
    KeyChain chain = he_keygen(t1.params, 12);
    Rng rng(100);
    const auto& [sk, pk] = chain.pairs[0];

    LweCiphertext one_a = he_encrypt(t1.params, pk, 1, rng);
    LweCiphertext one_b = he_encrypt(t1.params, pk, 1, rng);
    LweCiphertext cts[2] = {one_a, one_b};
    CHECK(he_decrypt(t1.params, sk, he_eval_linear(t1.params, cts, {})) == 0);

    LweCiphertext zero = he_encrypt(t1.params, pk, 0, rng);
    const int one_bit[1] = {1};
    CHECK(he_decrypt(t1.params, sk, he_eval_linear(t1.params, std::span(&zero, 1), one_bit)) == 1);

    LweCiphertext moved = he_encrypt(t1.params, pk, 1, rng);
    moved.level = 1;
    LweCiphertext mixed[2] = {one_a, moved};
    CHECK_THROWS_AS(he_eval_linear(t1.params, mixed, {}), KeyLevelError);
}

TEST_CASE("budget enforcement at the small odd modulus") {
    T1Fixture t1 = t1_fixture();
    KeyChain chain = he_keygen(t1.params, 13);
    Rng rng(101);
    std::vector<LweCiphertext> eight;
    for (int i = 0; i < 8; ++i) eight.push_back(he_encrypt(t1.params, chain.pairs[0].second, 1, rng));
    // Worst-case error of an 8-chain exceeds (q-1)/4 at q=17; the declared
    // budget rejects it instead of risking a wrong decryption.
    CHECK_THROWS_AS(he_eval_linear(t1.params, eight, {}), NoiseError);
}

TEST_CASE("long XOR chains at the power-of-two modulus") {
    LweParams p = t1_scheme_params();
    KeyChain chain = he_keygen(p, 14);
    Rng rng(102);
    const auto& [sk, pk] = chain.pairs[0];
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<LweCiphertext> cts;
        int expect = 0;
        for (int i = 0; i < 8; ++i) {
            int b = rng.bit();
            expect ^= b;
            cts.push_back(he_encrypt(p, pk, b, rng));
        }
        LweCiphertext x = he_eval_linear(p, cts, {});
        CHECK(he_decrypt(p, sk, x) == expect);
    }
}

TEST_CASE("homomorphism property within the declared budget") {
    LweParams p = t1_scheme_params();
    KeyChain chain = he_keygen(p, 15);
    Rng rng(103);
    const auto& [sk, pk] = chain.pairs[0];
    for (int trial = 0; trial < 100; ++trial) {
        uint64_t k = 2 + rng.below(10);
        std::vector<LweCiphertext> cts;
        std::vector<int> plains;
        int expect = 0;
        for (uint64_t i = 0; i < k; ++i) {
            int b = rng.bit();
            expect ^= b;
            cts.push_back(he_encrypt(p, pk, b, rng));
        }
        for (int i = 0; i < 3; ++i) {
            int b = rng.bit();
            expect ^= b;
            plains.push_back(b);
        }
        LweCiphertext x = he_eval_linear(p, cts, plains);
        CHECK(he_decrypt(p, sk, x) == expect);
        CHECK(x.noise_budget >= 0);
    }
}
