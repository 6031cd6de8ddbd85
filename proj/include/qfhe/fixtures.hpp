#pragma once

#include "qfhe/garden_hose.hpp"
#include "qfhe/lwe.hpp"

namespace qfhe {

// Canonical toy instances shared by the CLI, the tests and the acceptance
// suite.

// Pipeline-scale instance: n=4, q=17, error bound 1. The secret (1,0,1,1)
// and ciphertext mask (3,5,7,11), body 13 form the worked inner-product
// example: <mask, sk> = 21 = 4 (mod 17), phase 9, decrypts to 1.
struct T1Fixture {
    LweParams params;
    SecretKey sk;
    LweCiphertext ct;
};

T1Fixture t1_fixture();

// Scheme-scale parameter family: same dimension and error bound as t1 but a
// power-of-two modulus wide enough for the XOR load of small circuits
// (q = 4096 supports chains of ~1000 fresh XORs).
LweParams t1_scheme_params();

// Reduced network for chain-vs-dense cross-validation: q=2, n=1 gives a
// 9-pipe network, 19 qubits when fully materialized densely. The HE layer is
// not involved; wiring symbols come from raw mod-2 ciphertext values.
PipeNetwork reduced_network();

}  // namespace qfhe
