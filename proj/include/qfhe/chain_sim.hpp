#pragma once

#include <array>
#include <vector>

#include "qfhe/state_vector.hpp"

namespace qfhe {

// Deferred X/Z correction bits. Global phase is intentionally untracked.
struct PauliFrame {
    uint8_t x = 0;
    uint8_t z = 0;
    bool operator==(const PauliFrame&) const = default;
};

enum class Decoration : uint8_t { None, Pdg };

// Exact teleportation-chain execution of one data qubit.
//
// The stored amplitude pair is the logical state; the physically held state
// is X^x Z^z (logical). A teleport hop folds its outcome into the frame. A
// phase-down decoration multiplies the logical state by diag(1, -i) and
// conjugates the frame (an X in the frame induces z ^= x), which is exact up
// to the dropped global phase.
//
// Only the pair currently carrying the data ever exists: Bell measurements on
// disjoint pairs commute and off-path pairs never entangle with the data, so
// their outcomes are sampled as independent uniform bits elsewhere.
class ChainSim {
public:
    ChainSim(cplx a0, cplx a1);

    void teleport(BellOutcome o, Decoration d);
    BellOutcome teleport(Rng& rng, Decoration d);

    const PauliFrame& frame() const { return frame_; }
    const std::vector<BellOutcome>& transcript() const { return transcript_; }

    // Normalized logical amplitudes plus the accumulated frame; applying
    // Z^z X^x to the held state recovers the logical one.
    std::pair<std::array<cplx, 2>, PauliFrame> resolve() const;

private:
    cplx a0_, a1_;
    PauliFrame frame_;
    std::vector<BellOutcome> transcript_;
};

}  // namespace qfhe
