#include "qfhe/chain_sim.hpp"

#include <cmath>

namespace qfhe {

ChainSim::ChainSim(cplx a0, cplx a1) : a0_(a0), a1_(a1) {
    double n = std::norm(a0_) + std::norm(a1_);
    if (std::abs(n - 1.0) > 1e-12) throw InputError("chain: data state must be normalized");
}

void ChainSim::teleport(BellOutcome o, Decoration d) {
    frame_.x ^= o.m1;
    frame_.z ^= o.m2;
    if (d == Decoration::Pdg) {
        a1_ *= cplx{0.0, -1.0};
        frame_.z ^= frame_.x;
    }
    transcript_.push_back(o);
}

BellOutcome ChainSim::teleport(Rng& rng, Decoration d) {
    BellOutcome o{static_cast<uint8_t>(rng.bit()), static_cast<uint8_t>(rng.bit())};
    teleport(o, d);
    return o;
}

std::pair<std::array<cplx, 2>, PauliFrame> ChainSim::resolve() const {
    double n = std::sqrt(std::norm(a0_) + std::norm(a1_));
    return {{a0_ / n, a1_ / n}, frame_};
}

}  // namespace qfhe
