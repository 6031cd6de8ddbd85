#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfhe/branching_program.hpp"

namespace qfhe {

// Two-party pipe network for a layered add-constant branching program.
//
// Knowledge is split: the key side (Alice) wires her ends at creation time
// from the branch bits alone; the evaluator side (Bob) wires his ends from
// the start state and per-layer constants alone. Each layer needs a rank the
// evaluator can deliver into and a rank the key side selects into, and the
// evaluator must wire both branch bundles without knowing which one is live,
// so arrival ranks carry one copy per branch lane. Water direction:
//
//   entry (B->A) -> bundle of layer 1 (A->B) -> interface 2 (B->A)
//     -> bundle 2 (A->B) -> ... -> exit rank (B->A, open A end)
//
// The start-state offset is folded into the evaluator's layer-1 wiring, so
// there is no layer-1 interface rank. Pipe count: 4*q*L + 1.

enum class PipeRole : uint8_t { Entry, Interface, Bundle0, Bundle1, Exit };
enum class Side : uint8_t { A = 0, B = 1 };

struct Pipe {
    uint32_t id = 0;
    uint32_t layer = 0;  // 0 for entry, 1..L for bundles/interfaces, L+1 for exits
    PipeRole role = PipeRole::Entry;
    uint32_t state_index = 0;
    uint32_t lane = 0;  // branch copy an arrival rank belongs to
};

inline uint32_t end_id(uint32_t pipe, Side s) { return 2 * pipe + static_cast<uint32_t>(s); }
inline uint32_t end_pipe(uint32_t end) { return end / 2; }
inline Side end_side(uint32_t end) { return static_cast<Side>(end & 1); }

struct PipeNetwork {
    uint64_t modulus = 2;    // states per lane
    uint32_t layer_count = 0;
    std::vector<Pipe> pipes;
    uint32_t entry_pipe = 0;
    std::vector<uint32_t> accept_sorted;  // accept states
    std::vector<uint32_t> decorated;      // sorted pipe ids carrying the phase-down mark
    std::vector<Reader> reader_tags;      // per layer

    uint32_t pipe_count() const { return static_cast<uint32_t>(pipes.size()); }
    uint32_t bundle_pipe(uint32_t layer, uint32_t state, uint32_t branch) const;
    uint32_t interface_pipe(uint32_t layer, uint32_t state, uint32_t lane) const;  // layer in [2, L]
    uint32_t exit_pipe(uint32_t state, uint32_t lane) const;
    // Faucet: the open end where the data enters.
    uint32_t entry_end() const { return end_id(entry_pipe, Side::B); }
    // Water direction through a pipe follows its role.
    Side in_side(uint32_t pipe) const;
    bool is_decorated(uint32_t pipe) const;
    bool accepts(uint32_t state) const;
};

// Expected pipe count of the construction.
inline uint64_t gh_pipe_count(uint64_t q, uint64_t layers) { return 4 * q * layers + 1; }

PipeNetwork gh_build(const LayeredBp& bp);
// Shape-only build (constants unknown until evaluation).
PipeNetwork gh_build_shape(uint64_t q, uint32_t layers, std::vector<uint32_t> accept_sorted,
                           std::vector<Reader> reader_tags);

struct Matching {
    // End-id pairs, each stored (lo, hi), sorted; canonical for comparison.
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    void add(uint32_t a, uint32_t b);
    void canonicalize();
    bool operator==(const Matching&) const = default;
};

Matching gh_wire_alice(const PipeNetwork& net, std::span<const uint8_t> bits);

struct BobSymbols {
    uint64_t start_state = 0;
    std::vector<std::pair<uint64_t, uint64_t>> adds;  // (add0, add1) per layer
};

BobSymbols bob_symbols_from_bp(const LayeredBp& bp);
BobSymbols bob_symbols_from_ct(const LweCiphertext& ct, uint64_t q);

Matching gh_wire_bob(const PipeNetwork& net, const BobSymbols& symbols);

struct WaterTrace {
    std::vector<uint32_t> visited_ends;  // in traversal order
    uint32_t exit_end = 0;
    uint32_t traversed_decorations = 0;
    int output = 0;
    uint32_t exit_state = 0;
    uint32_t exit_lane = 0;
    uint32_t exit_pipe = 0;
};

WaterTrace gh_flow(const PipeNetwork& net, const Matching& alice, const Matching& bob);

std::string gh_to_dot(const PipeNetwork& net, const Matching* alice, const Matching* bob);

}  // namespace qfhe
