#include "qfhe/ma_program.hpp"

#include <algorithm>
#include <bit>

#include "qfhe/modmath.hpp"

namespace qfhe {

bool MaProgram::accepts(uint64_t state) const {
    return std::binary_search(accept_sorted.begin(), accept_sorted.end(), state);
}

void MaProgram::validate() const {
    if (modulus < 2) throw InputError("ma: modulus must be >= 2");
    if (start_state >= modulus) throw InputError("ma: start state out of range");
    for (const auto& ins : instructions) {
        if (ins.var_index < 1 || ins.var_index > input_arity)
            throw InputError("ma: instruction variable index out of range");
        if (ins.add0 >= modulus || ins.add1 >= modulus)
            throw InputError("ma: instruction constant out of range");
    }
    if (!std::is_sorted(accept_sorted.begin(), accept_sorted.end()))
        throw InputError("ma: accept set must be sorted");
    if (!accept_sorted.empty() && accept_sorted.back() >= modulus)
        throw InputError("ma: accept state out of range");
}

MaTrace ma_evaluate(const MaProgram& prog, std::span<const uint8_t> x) {
    if (x.size() != prog.input_arity) throw InputError("ma: input arity mismatch");
    MaTrace tr;
    tr.states.reserve(prog.instructions.size() + 1);
    uint64_t s = prog.start_state;
    tr.states.push_back(s);
    for (const auto& ins : prog.instructions) {
        uint64_t add = x[ins.var_index - 1] ? ins.add1 : ins.add0;
        s = mod_add(s, add, prog.modulus);
        tr.states.push_back(s);
    }
    tr.output = prog.accepts(s) ? 1 : 0;
    return tr;
}

std::vector<uint64_t> lwe_accept_set(uint64_t q) {
    std::vector<uint64_t> acc;
    for (uint64_t s = 0; s < q; ++s)
        if (round_bit(s, q)) acc.push_back(s);
    return acc;
}

MaProgram compile_lwe_dec(const LweCiphertext& ct, uint64_t q) {
    MaProgram prog;
    prog.modulus = q;
    prog.start_state = ct.body % q;
    prog.input_arity = static_cast<uint32_t>(ct.mask.size());
    prog.instructions.reserve(ct.mask.size());
    for (uint32_t i = 0; i < ct.mask.size(); ++i)
        prog.instructions.push_back({i + 1, 0, mod_neg(ct.mask[i] % q, q)});
    prog.accept_sorted = lwe_accept_set(q);
    return prog;
}

MaProgram compile_counter(uint32_t n, const std::vector<uint32_t>& accept_weights) {
    if (n < 1) throw InputError("counter: need at least one input");
    MaProgram prog;
    prog.modulus = n + 1;
    prog.start_state = 0;
    prog.input_arity = n;
    for (uint32_t i = 0; i < n; ++i) prog.instructions.push_back({i + 1, 0, 1});
    prog.accept_sorted.assign(accept_weights.begin(), accept_weights.end());
    std::sort(prog.accept_sorted.begin(), prog.accept_sorted.end());
    prog.accept_sorted.erase(std::unique(prog.accept_sorted.begin(), prog.accept_sorted.end()),
                             prog.accept_sorted.end());
    if (!prog.accept_sorted.empty() && prog.accept_sorted.back() > n)
        throw InputError("counter: accept weight above input count");
    return prog;
}

MaProgram compile_parity(uint32_t n) {
    if (n < 1) throw InputError("counter: need at least one input");
    MaProgram prog;
    prog.modulus = 2;
    prog.start_state = 0;
    prog.input_arity = n;
    for (uint32_t i = 0; i < n; ++i) prog.instructions.push_back({i + 1, 0, 1});
    prog.accept_sorted = {1};
    return prog;
}

MaProgram compile_abe_predicate(std::span<const uint64_t> attributes, uint64_t q) {
    if (attributes.empty()) throw InputError("abe: attribute vector must be nonempty");
    MaProgram prog;
    prog.modulus = q;
    prog.start_state = 0;
    prog.input_arity = static_cast<uint32_t>(attributes.size());
    for (uint32_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i] >= q) throw InputError("abe: attribute out of range");
        prog.instructions.push_back({i + 1, 0, attributes[i]});
    }
    prog.accept_sorted = {0};
    return prog;
}

std::optional<SymmetryWitness> symmetry_witness(const MaProgram& prog) {
    const uint32_t n = prog.input_arity;
    if (n > 16) throw SizeError("symmetry: exhaustive check limited to arity 16");

    // Outputs bucketed by Hamming weight; a mixed bucket proves asymmetry.
    std::vector<int> out(1u << n);
    std::vector<uint64_t> fin(1u << n);
    std::vector<uint8_t> x(n);
    bool mixed = false;
    std::vector<int8_t> weight_out(n + 1, -1);
    for (uint32_t v = 0; v < (1u << n); ++v) {
        for (uint32_t i = 0; i < n; ++i) x[i] = (v >> i) & 1;
        MaTrace tr = ma_evaluate(prog, x);
        out[v] = tr.output;
        fin[v] = tr.states.back();
        uint32_t w = static_cast<uint32_t>(std::popcount(v));
        if (weight_out[w] < 0)
            weight_out[w] = static_cast<int8_t>(tr.output);
        else if (weight_out[w] != tr.output)
            mixed = true;
    }
    if (!mixed) return std::nullopt;

    // Lexicographically smallest input, then smallest transposition, whose
    // swap flips the output. Inputs are compared as bit sequences x_1..x_n.
    for (uint64_t rank = 0; rank < (1u << n); ++rank) {
        // Lexicographic order on (x_1, ..., x_n) means x_1 is the most
        // significant comparison position.
        uint32_t v = 0;
        for (uint32_t i = 0; i < n; ++i)
            if (rank & (1ull << (n - 1 - i))) v |= 1u << i;
        for (uint32_t i = 0; i < n; ++i) {
            for (uint32_t j = i + 1; j < n; ++j) {
                uint32_t bi = (v >> i) & 1, bj = (v >> j) & 1;
                if (bi == bj) continue;
                uint32_t u = v ^ (1u << i) ^ (1u << j);
                if (out[v] != out[u]) {
                    SymmetryWitness w;
                    w.input.resize(n);
                    for (uint32_t k = 0; k < n; ++k) w.input[k] = (v >> k) & 1;
                    w.swap_i = i + 1;
                    w.swap_j = j + 1;
                    w.out_a = out[v];
                    w.out_b = out[u];
                    w.state_a = fin[v];
                    w.state_b = fin[u];
                    return w;
                }
            }
        }
    }
    throw Error("symmetry: mixed weight class without a transposition witness");
}

}  // namespace qfhe
