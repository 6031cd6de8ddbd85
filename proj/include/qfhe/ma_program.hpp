#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qfhe/lwe.hpp"

namespace qfhe {

// Straight-line programs over Z_m: each instruction reads one input bit and
// adds one of two constants to the running state; acceptance is membership of
// the final state in a fixed set.

struct MaInstruction {
    uint32_t var_index = 1;  // 1-based input position
    uint64_t add0 = 0;       // added when the bit is 0
    uint64_t add1 = 0;       // added when the bit is 1
};

struct MaProgram {
    uint64_t modulus = 2;
    std::vector<MaInstruction> instructions;
    uint64_t start_state = 0;
    std::vector<uint64_t> accept_sorted;  // ascending, subset of [0, modulus)
    uint32_t input_arity = 0;

    bool accepts(uint64_t state) const;
    void validate() const;  // throws InputError on malformed fields
};

struct MaTrace {
    std::vector<uint64_t> states;  // s_0 .. s_L
    int output = 0;
};

MaTrace ma_evaluate(const MaProgram& prog, std::span<const uint8_t> x);

// States whose rounded phase decodes to 1; the rounding lives entirely here.
std::vector<uint64_t> lwe_accept_set(uint64_t q);

// Decryption of a fixed ciphertext as a program over the secret-key bits:
// start at the body, subtract mask entries, accept on the rounding zone.
MaProgram compile_lwe_dec(const LweCiphertext& ct, uint64_t q);

// Hamming-weight counter with an arbitrary accept set of weights.
MaProgram compile_counter(uint32_t n, const std::vector<uint32_t>& accept_weights);

// Width-2 parity counter (modulus 2, accept {1}).
MaProgram compile_parity(uint32_t n);

// Inner-product predicate that accepts exactly when <sk, x> = 0 mod q.
MaProgram compile_abe_predicate(std::span<const uint64_t> attributes, uint64_t q);

struct SymmetryWitness {
    std::vector<uint8_t> input;
    uint32_t swap_i = 0, swap_j = 0;  // 1-based positions exchanged
    int out_a = 0, out_b = 0;
    uint64_t state_a = 0, state_b = 0;  // final states of both runs
};

// Empty result means the program computes a symmetric function. Otherwise the
// lexicographically smallest (input, transposition) with differing outputs is
// returned. Exhaustive; arity above 16 is rejected.
std::optional<SymmetryWitness> symmetry_witness(const MaProgram& prog);

}  // namespace qfhe
