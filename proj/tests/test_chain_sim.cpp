#include <doctest.h>

#include <cmath>

#include "qfhe/chain_sim.hpp"

using namespace qfhe;

TEST_CASE("fresh chain holds the input") {
    ChainSim chain(cplx{0, 0}, cplx{1, 0});
    auto [amps, frame] = chain.resolve();
    CHECK(amps[0] == cplx{0, 0});
    CHECK(amps[1] == cplx{1, 0});
    CHECK(frame == PauliFrame{0, 0});
    CHECK_THROWS_AS(ChainSim(cplx{1, 0}, cplx{1, 0}), InputError);
}

TEST_CASE("plain hops only move the frame") {
    ChainSim chain(cplx{0.6, 0}, cplx{0, 0.8});
    chain.teleport(BellOutcome{1, 0}, Decoration::None);
    auto [amps, frame] = chain.resolve();
    CHECK(frame == PauliFrame{1, 0});
    CHECK(amps[0] == cplx{0.6, 0});
    CHECK(amps[1] == cplx{0, 0.8});
    CHECK(chain.transcript().size() == 1);
}

TEST_CASE("phase-down decoration acts on the state and conjugates the frame") {
    const double s = 0.70710678118654752;
    {
        ChainSim chain(cplx{s, 0}, cplx{0, s});  // |+i>
        chain.teleport(BellOutcome{0, 0}, Decoration::Pdg);
        auto [amps, frame] = chain.resolve();
        CHECK(std::abs(amps[0] - cplx{s, 0}) < 1e-12);
        CHECK(std::abs(amps[1] - cplx{s, 0}) < 1e-12);  // |+>
        CHECK(frame == PauliFrame{0, 0});
    }
    {
        // An X already in the frame picks up a Z on conjugation.
        ChainSim chain(cplx{s, 0}, cplx{0, s});
        chain.teleport(BellOutcome{1, 0}, Decoration::Pdg);
        auto [amps, frame] = chain.resolve();
        CHECK(frame == PauliFrame{1, 1});
        CHECK(std::abs(amps[1] - cplx{s, 0}) < 1e-12);
    }
}

TEST_CASE("random chains stay self-consistent") {
    Rng rng(42);
    for (int trial = 0; trial < 10000; ++trial) {
        double t = rng.uniform01() * 3.14159265358979;
        double p = rng.uniform01() * 6.28318530717959;
        cplx a0{std::cos(t / 2), 0};
        cplx a1 = std::polar(std::sin(t / 2), p);
        ChainSim chain(a0, a1);
        uint8_t x = 0, z = 0;
        int hops = 1 + static_cast<int>(rng.below(8));
        for (int h = 0; h < hops; ++h) {
            BellOutcome o = chain.teleport(rng, Decoration::None);
            x ^= o.m1;
            z ^= o.m2;
        }
        auto [amps, frame] = chain.resolve();
        CHECK(frame.x == x);
        CHECK(frame.z == z);
        CHECK(std::abs(amps[0] - a0) < 1e-10);
        CHECK(std::abs(amps[1] - a1) < 1e-10);
    }
}

TEST_CASE("long chains accumulate exactly") {
    ChainSim chain(cplx{1, 0}, cplx{0, 0});
    Rng rng(7);
    uint8_t x = 0, z = 0;
    for (int h = 0; h < 273; ++h) {
        BellOutcome o = chain.teleport(rng, Decoration::None);
        x ^= o.m1;
        z ^= o.m2;
    }
    auto [amps, frame] = chain.resolve();
    CHECK(frame.x == x);
    CHECK(frame.z == z);
    CHECK(amps[0] == cplx{1, 0});
    CHECK(chain.transcript().size() == 273);
}
