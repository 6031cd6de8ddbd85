#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfhe/gadget.hpp"
#include "qfhe/state_vector.hpp"

namespace qfhe {

enum class CircOp : uint8_t { X, Z, H, S, Cnot, T };

struct CircuitGate {
    CircOp op = CircOp::X;
    uint32_t q0 = 0;
    uint32_t q1 = 0;  // CNOT target
};

struct Circuit {
    uint32_t qubit_count = 1;
    std::vector<CircuitGate> gates;

    uint32_t t_count() const;
    void validate() const;
};

StateVector simulate_plain(const Circuit& c, StateVector in);

// Leveled scheme: pad every qubit with a random X^a Z^b, keep the pads
// bit-encrypted, update them per gate, and burn one gadget (one key level)
// per T gate.
struct QfheKeys {
    LweParams params;
    uint32_t t_levels = 0;  // L; chain holds L+1 key pairs
    KeyChain chain;
    std::vector<GadgetKey> gadget_keys;
};

QfheKeys qfhe_keygen(LweParams params, uint32_t t_levels, uint64_t seed);

struct QubitPads {
    LweCiphertext a;  // bit-flip pad
    LweCiphertext b;  // phase-flip pad
};

struct QfheCiphertext {
    StateVector state;  // padded register held by the evaluator
    std::vector<QubitPads> pads;
    uint32_t level = 0;
};

constexpr uint32_t kMaxPlaintextQubits = 3;

QfheCiphertext qfhe_encrypt(const QfheKeys& keys, const StateVector& plaintext, Rng& rng);

// Homomorphic evaluation. X/Z flip a pad bit with a plain XOR, H swaps the
// pads, S folds a into b, CNOT mixes pads across its qubits, T applies the
// physical T then the conditional phase-down gadget and re-levels every pad.
QfheCiphertext qfhe_eval(const QfheKeys& keys, const Circuit& c, QfheCiphertext ct, Rng& rng);

struct DecryptStats {
    uint64_t modular_ops = 0;  // pad decryption work
    uint64_t gate_ops = 0;     // pad removal slots
};

StateVector qfhe_decrypt(const QfheKeys& keys, const QfheCiphertext& ct,
                         DecryptStats* stats = nullptr);

}  // namespace qfhe
