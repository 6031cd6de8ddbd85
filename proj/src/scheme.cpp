#include "qfhe/scheme.hpp"

#include <algorithm>

#include "qfhe/modmath.hpp"

namespace qfhe {

uint32_t Circuit::t_count() const {
    uint32_t c = 0;
    for (const auto& g : gates)
        if (g.op == CircOp::T) ++c;
    return c;
}

void Circuit::validate() const {
    if (qubit_count == 0) throw InputError("circuit: needs at least one qubit");
    for (const auto& g : gates) {
        if (g.q0 >= qubit_count) throw InputError("circuit: qubit index out of range");
        if (g.op == CircOp::Cnot) {
            if (g.q1 >= qubit_count) throw InputError("circuit: qubit index out of range");
            if (g.q0 == g.q1) throw InputError("circuit: cnot needs distinct qubits");
        }
    }
}

StateVector simulate_plain(const Circuit& c, StateVector in) {
    c.validate();
    if (in.qubit_count() != c.qubit_count) throw InputError("circuit: register size mismatch");
    for (const auto& g : c.gates) {
        switch (g.op) {
            case CircOp::X: in.apply(Gate::X, g.q0); break;
            case CircOp::Z: in.apply(Gate::Z, g.q0); break;
            case CircOp::H: in.apply(Gate::H, g.q0); break;
            case CircOp::S: in.apply(Gate::S, g.q0); break;
            case CircOp::T: in.apply(Gate::T, g.q0); break;
            case CircOp::Cnot: in.apply_cnot(g.q0, g.q1); break;
        }
    }
    return in;
}

QfheKeys qfhe_keygen(LweParams params, uint32_t t_levels, uint64_t seed) {
    params.levels = t_levels + 1;
    params.validate();
    QfheKeys keys;
    keys.params = params;
    keys.t_levels = t_levels;
    keys.chain = he_keygen(params, seed);
    Rng root(seed);
    for (uint32_t i = 0; i < t_levels; ++i)
        keys.gadget_keys.push_back(gadget_gen(params, keys.chain.pairs[i].first,
                                              keys.chain.pairs[i + 1].second,
                                              root.stream(0x6164670000ull + i)));
    return keys;
}

QfheCiphertext qfhe_encrypt(const QfheKeys& keys, const StateVector& plaintext, Rng& rng) {
    if (plaintext.qubit_count() > kMaxPlaintextQubits)
        throw ResourceError("qfhe: plaintext register too large");
    QfheCiphertext ct{plaintext, {}, 0};
    const PublicKey& pk0 = keys.chain.pairs[0].second;
    for (uint32_t q = 0; q < plaintext.qubit_count(); ++q) {
        int a = rng.bit(), b = rng.bit();
        ct.state = qotp(std::move(ct.state), a, b, PadDirection::Encrypt, q);
        ct.pads.push_back({he_encrypt(keys.params, pk0, a, rng),
                           he_encrypt(keys.params, pk0, b, rng)});
    }
    return ct;
}

namespace {

// Desk-scale stand-in for re-encryption under the next-level key: XOR-only
// homomorphic capability cannot express the decryption rounding, so the
// transparent evaluator decrypts and re-encrypts.
LweCiphertext refresh_pad(const QfheKeys& keys, const LweCiphertext& ct, uint32_t to_level,
                          Rng& rng) {
    int bit = he_decrypt(keys.params, keys.chain.pairs[ct.level].first, ct);
    return he_encrypt(keys.params, keys.chain.pairs[to_level].second, bit, rng);
}

LweCiphertext xor_cts(const LweParams& p, const LweCiphertext& a, const LweCiphertext& b) {
    LweCiphertext ops[2] = {a, b};
    return he_eval_linear(p, ops, {});
}

}  // namespace

QfheCiphertext qfhe_eval(const QfheKeys& keys, const Circuit& c, QfheCiphertext ct, Rng& rng) {
    c.validate();
    if (c.qubit_count != ct.state.qubit_count() || ct.pads.size() != c.qubit_count)
        throw InputError("qfhe: circuit/ciphertext shape mismatch");
    if (ct.level + c.t_count() > keys.t_levels) throw DepthError("qfhe: T budget exceeded");
    const LweParams& params = keys.params;

    for (const auto& g : c.gates) {
        QubitPads& pads = ct.pads[g.q0];
        switch (g.op) {
            // Pauli gates are absorbed into the pad: nothing touches the held
            // register, the encrypted pad bit flips instead.
            case CircOp::X: {
                const int one[1] = {1};
                pads.a = he_eval_linear(params, std::span(&pads.a, 1), one);
                break;
            }
            case CircOp::Z: {
                const int one[1] = {1};
                pads.b = he_eval_linear(params, std::span(&pads.b, 1), one);
                break;
            }
            case CircOp::H:
                ct.state.apply(Gate::H, g.q0);
                std::swap(pads.a, pads.b);
                break;
            case CircOp::S:
                ct.state.apply(Gate::S, g.q0);
                pads.b = xor_cts(params, pads.a, pads.b);
                break;
            case CircOp::Cnot: {
                ct.state.apply_cnot(g.q0, g.q1);
                QubitPads& tgt = ct.pads[g.q1];
                pads.b = xor_cts(params, pads.b, tgt.b);
                tgt.a = xor_cts(params, pads.a, tgt.a);
                break;
            }
            case CircOp::T: {
                // T first, then the conditional phase-down through the gadget.
                ct.state.apply(Gate::T, g.q0);
                if (!is_power_of_two(params.q))
                    throw InputError("qfhe: T evaluation needs a power-of-two modulus");
                const GadgetKey& gk = keys.gadget_keys[ct.level];
                GadgetOutput out =
                    gadget_apply(gk, {cplx{1, 0}, cplx{0, 0}}, pads.a, rng.stream(rng.next()));
                // The chain applied X^cx Z^cz Pdg^fired to the teleported
                // qubit; mirror it on the held register.
                if (out.fired) ct.state.apply(Gate::Sdg, g.q0);
                if (out.frame.z) ct.state.apply(Gate::Z, g.q0);
                if (out.frame.x) ct.state.apply(Gate::X, g.q0);
                // New bit-flip pad: accept membership of the exit state is the
                // XOR of the two top state bits at power-of-two q, so the
                // update stays inside he_eval_linear.
                const uint32_t w = ceil_log2(params.q);
                LweCiphertext acc_bits[3] = {out.loc_ct[w - 1], out.loc_ct[w - 2], out.corr_x_ct};
                LweCiphertext new_a = he_eval_linear(params, acc_bits, {});
                LweCiphertext refreshed_b = refresh_pad(keys, pads.b, ct.level + 1, rng);
                LweCiphertext new_b = xor_cts(params, refreshed_b, out.corr_z_ct);
                for (uint32_t q = 0; q < c.qubit_count; ++q) {
                    if (q == g.q0) continue;
                    ct.pads[q].a = refresh_pad(keys, ct.pads[q].a, ct.level + 1, rng);
                    ct.pads[q].b = refresh_pad(keys, ct.pads[q].b, ct.level + 1, rng);
                }
                pads.a = new_a;
                pads.b = new_b;
                ++ct.level;
                break;
            }
        }
    }
    return ct;
}

StateVector qfhe_decrypt(const QfheKeys& keys, const QfheCiphertext& ct, DecryptStats* stats) {
    if (ct.level >= keys.chain.pairs.size()) throw KeyLevelError("qfhe: no key for this level");
    const SecretKey& sk = keys.chain.pairs[ct.level].first;
    StateVector out = ct.state;
    for (uint32_t q = 0; q < ct.pads.size(); ++q) {
        int a = he_decrypt(keys.params, sk, ct.pads[q].a);
        int b = he_decrypt(keys.params, sk, ct.pads[q].b);
        out = qotp(std::move(out), a, b, PadDirection::Decrypt, q);
        if (stats) {
            // Fixed work per pad: n multiply-accumulates plus the rounding,
            // and one removal slot per pad bit regardless of its value.
            stats->modular_ops += 2 * (keys.params.n + 1);
            stats->gate_ops += 2;
        }
    }
    return out;
}

}  // namespace qfhe
