#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qfhe/chain_sim.hpp"
#include "qfhe/garden_hose.hpp"
#include "qfhe/lwe.hpp"

namespace qfhe {

// Bell outcomes keyed by junction id (the smaller end id of the measured
// pair; the injection pseudo-junction is keyed by the faucet end). Outcome
// streams are derived from the run seed and the junction key, so transcripts
// do not depend on measurement order.
struct OutcomeTable {
    std::vector<std::pair<uint32_t, BellOutcome>> entries;  // sorted by key

    void put(uint32_t key, BellOutcome o);
    const BellOutcome* find(uint32_t key) const;
    void sort_entries();
    bool operator==(const OutcomeTable&) const = default;
};

// Everything the key holder fixes before any ciphertext exists: the network
// shape for the decryption program of this level, her selection wiring and
// the Bell outcomes of those junctions (measured eagerly at generation), and
// the selection bits encrypted under the next level.
struct GadgetKey {
    LweParams params;
    uint32_t level = 0;  // sk level i; emitted ciphertexts live at i+1
    PipeNetwork network;
    Matching alice_matching;
    OutcomeTable alice_outcomes;
    std::vector<LweCiphertext> selection_cts;
    PublicKey pk_next;
};

GadgetKey gadget_gen(const LweParams& params, const SecretKey& sk, const PublicKey& pk_next,
                     const Rng& rng);

struct ServerView {
    Matching bob_matching;
    OutcomeTable bob_outcomes;  // all evaluator-side junctions plus the injection
    bool operator==(const ServerView&) const = default;
};

struct GadgetOutput {
    uint32_t level = 0;  // level of the emitted ciphertexts
    std::array<cplx, 2> data{};
    PauliFrame frame;
    std::vector<uint32_t> candidate_exits;  // open exit end ids, sorted
    // Transparent routing record kept by the simulator; not part of the
    // evaluator's view.
    uint32_t exit_end = 0;
    uint32_t exit_state = 0;
    uint32_t exit_lane = 0;
    bool fired = false;
    std::vector<LweCiphertext> loc_ct;  // state bits LSB-first, then the lane bit
    LweCiphertext corr_x_ct;
    LweCiphertext corr_z_ct;
    ServerView server_view;
};

GadgetOutput gadget_apply(const GadgetKey& key, std::array<cplx, 2> data_in,
                          const LweCiphertext& control, const Rng& rng);

// Schedule-driven executor: identical semantics, but outcomes are collected
// in the supplied junction order. Used to check order invariance.
GadgetOutput gadget_apply_ordered(const GadgetKey& key, std::array<cplx, 2> data_in,
                                  const LweCiphertext& control, const Rng& rng,
                                  std::span<const uint32_t> junction_keys);

struct GadgetResolved {
    std::array<cplx, 2> state{};
    PauliFrame new_pauli;
    uint32_t exit_state = 0;
    uint32_t exit_lane = 0;
};

GadgetResolved gadget_resolve(const LweParams& params, const SecretKey& sk_next,
                              const GadgetOutput& out);

}  // namespace qfhe
