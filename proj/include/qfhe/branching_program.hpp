#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qfhe/ma_program.hpp"

namespace qfhe {

// Party that fixes the layer's branch variable at wiring time.
enum class Reader : uint8_t { Alice, Bob, Shared };

struct BpLayer {
    uint32_t var_index = 1;  // 1-based input position
    uint32_t state_count = 0;
    std::vector<uint32_t> map0;  // transition when the bit is 0
    std::vector<uint32_t> map1;
    Reader reader = Reader::Alice;
};

struct LayeredBp {
    std::vector<BpLayer> layers;
    uint32_t start_state = 0;
    std::vector<uint32_t> accept_sorted;  // over final-layer states
    uint32_t input_arity = 0;

    bool accepts(uint32_t state) const;
};

struct BpMetrics {
    uint32_t width_states = 0;
    uint32_t width_bits = 0;
    uint32_t length = 0;
};

struct BpEval {
    int output = 0;
    std::vector<uint32_t> path;  // states before layer 1 .. after layer L
};

// State-level view of an MA program: one layer per instruction, both maps
// add-a / add-b permutations of Z_m.
LayeredBp bp_from_ma(const MaProgram& prog, std::span<const Reader> reader_tags);

// Re-encode states on ceil(log2 m) bits. Each modular-addition layer expands
// into one sub-layer per bit of the added constant (add of c_t * 2^t mod m),
// all reading the same input variable; codes >= m are fixed points.
LayeredBp bp_to_bit_level(const LayeredBp& bp);

BpEval bp_evaluate(const LayeredBp& bp, std::span<const uint8_t> x);

BpMetrics bp_metrics(const LayeredBp& bp);

bool bp_maps_are_permutations(const LayeredBp& bp);

// Extract the add-constant pair of each layer; throws InputError when some
// layer is not an add-constant permutation pair.
std::vector<std::pair<uint64_t, uint64_t>> bp_add_constants(const LayeredBp& bp);

std::string bp_to_dot(const LayeredBp& bp);

}  // namespace qfhe
