#include <doctest.h>

#include "qfhe/fixtures.hpp"
#include "qfhe/gadget.hpp"
#include "qfhe/json_io.hpp"

using namespace qfhe;

namespace {

const double kS = 0.70710678118654752;
const std::array<cplx, 2> kPlusI = {cplx{kS, 0}, cplx{0, kS}};
const std::array<cplx, 2> kPlus = {cplx{kS, 0}, cplx{kS, 0}};

struct GadgetFixture {
    T1Fixture t1 = t1_fixture();
    KeyChain chain;
    GadgetKey key;

    explicit GadgetFixture(uint64_t seed = 0xfeed) {
        chain = he_keygen(t1.params, seed);
        Rng rng(seed + 1);
        key = gadget_gen(t1.params, chain.pairs[0].first, chain.pairs[1].second, rng);
    }
};

}  // namespace

TEST_CASE("generation fixes the network, wiring and selection ciphertexts") {
    GadgetFixture f;
    CHECK(f.key.network.pipe_count() == 273);
    CHECK(f.key.selection_cts.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        CHECK(he_decrypt(f.t1.params, f.chain.pairs[1].first, f.key.selection_cts[i]) ==
              f.chain.pairs[0].first.bits[i]);
    // One recorded outcome per creation-time junction.
    CHECK(f.key.alice_outcomes.entries.size() == f.key.alice_matching.pairs.size());

    Rng rng(0xfeed + 1);
    GadgetKey again = gadget_gen(f.t1.params, f.chain.pairs[0].first, f.chain.pairs[1].second, rng);
    CHECK(gadget_key_to_json(again) == gadget_key_to_json(f.key));

    SecretKey wrong = f.chain.pairs[0].first;
    wrong.level = 1;
    CHECK_THROWS_AS(gadget_gen(f.t1.params, wrong, f.chain.pairs[1].second, rng), KeyLevelError);
}

TEST_CASE("identity branch leaves every tomography input unchanged") {
    GadgetFixture f;
    Rng rng(0xabc);
    const std::array<std::array<cplx, 2>, 4> inputs = {{
        {cplx{1, 0}, cplx{0, 0}},
        {cplx{0, 0}, cplx{1, 0}},
        kPlus,
        kPlusI,
    }};
    for (int trial = 0; trial < 10; ++trial) {
        Rng enc = rng.stream(trial * 2);
        LweCiphertext control = he_encrypt(f.t1.params, f.chain.pairs[0].second, 0, enc);
        for (const auto& in : inputs) {
            GadgetOutput out = gadget_apply(f.key, in, control, rng.stream(trial * 2 + 1));
            CHECK(!out.fired);
            GadgetResolved res = gadget_resolve(f.t1.params, f.chain.pairs[1].first, out);
            CHECK(fidelity_pair(res.state, in) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("live branch applies the phase-down") {
    GadgetFixture f;
    Rng rng(0xdef);
    for (int trial = 0; trial < 20; ++trial) {
        Rng enc = rng.stream(trial * 2);
        LweCiphertext control = he_encrypt(f.t1.params, f.chain.pairs[0].second, 1, enc);
        GadgetOutput out = gadget_apply(f.key, kPlusI, control, rng.stream(trial * 2 + 1));
        CHECK(out.fired);
        GadgetResolved res = gadget_resolve(f.t1.params, f.chain.pairs[1].first, out);
        CHECK(fidelity_pair(res.state, kPlus) >= 1.0 - 1e-9);
        // Diagonal input stays put.
        GadgetOutput out0 = gadget_apply(f.key, {cplx{1, 0}, cplx{0, 0}}, control,
                                         rng.stream(trial * 2 + 1));
        GadgetResolved res0 = gadget_resolve(f.t1.params, f.chain.pairs[1].first, out0);
        CHECK(fidelity_pair(res0.state, {cplx{1, 0}, cplx{0, 0}}) >= 1.0 - 1e-9);
    }
}

TEST_CASE("the canonical instance exits at state 9") {
    // Wire the gadget for the fixture's own secret so the worked ciphertext
    // drives it: body 13, mask (3,5,7,11), key (1,0,1,1) -> exit 9, accept.
    T1Fixture t1 = t1_fixture();
    KeyChain chain = he_keygen(t1.params, 0x1234);
    Rng rng(0x977);
    GadgetKey key = gadget_gen(t1.params, t1.sk, chain.pairs[1].second, rng.stream(0));
    GadgetOutput out = gadget_apply(key, kPlusI, t1.ct, rng.stream(1));
    CHECK(out.exit_state == 9);
    CHECK(out.fired);
    GadgetResolved res = gadget_resolve(t1.params, chain.pairs[1].first, out);
    CHECK(res.exit_state == 9);
    CHECK(res.exit_lane == out.exit_lane);
}

TEST_CASE("ledger ciphertexts decrypt to the transparent record") {
    GadgetFixture f;
    Rng rng(0x515);
    for (int trial = 0; trial < 30; ++trial) {
        int a = trial & 1;
        Rng enc = rng.stream(trial * 2);
        LweCiphertext control = he_encrypt(f.t1.params, f.chain.pairs[0].second, a, enc);
        GadgetOutput out = gadget_apply(f.key, kPlus, control, rng.stream(trial * 2 + 1));
        GadgetResolved res = gadget_resolve(f.t1.params, f.chain.pairs[1].first, out);
        CHECK(res.exit_state == out.exit_state);
        CHECK(res.exit_lane == out.exit_lane);
        CHECK(res.new_pauli == out.frame);
        CHECK(out.fired == (he_decrypt(f.t1.params, f.chain.pairs[0].first, control) == 1));
        // Every ledger ciphertext sits at the next level.
        for (const auto& ct : out.loc_ct) CHECK(ct.level == 1);
        CHECK(out.corr_x_ct.level == 1);
        CHECK(out.corr_z_ct.level == 1);
    }
    SecretKey wrong = f.chain.pairs[0].first;
    Rng enc = rng.stream(999);
    LweCiphertext control = he_encrypt(f.t1.params, f.chain.pairs[0].second, 0, enc);
    GadgetOutput out = gadget_apply(f.key, kPlus, control, rng.stream(1000));
    CHECK_THROWS_AS(gadget_resolve(f.t1.params, wrong, out), KeyLevelError);
}

TEST_CASE("server view has the full evaluator transcript") {
    GadgetFixture f;
    Rng rng(0x616);
    Rng enc = rng.stream(0);
    LweCiphertext control = he_encrypt(f.t1.params, f.chain.pairs[0].second, 1, enc);
    GadgetOutput out = gadget_apply(f.key, kPlus, control, rng.stream(1));
    // Injection plus one outcome per evaluator junction.
    CHECK(out.server_view.bob_outcomes.entries.size() ==
          out.server_view.bob_matching.pairs.size() + 1);
    CHECK(out.server_view.bob_matching.pairs.size() == 2 * 17 * 4);
    CHECK(out.candidate_exits.size() == 2 * 17);

    LweCiphertext late = control;
    late.level = 1;
    CHECK_THROWS_AS(gadget_apply(f.key, kPlus, late, rng.stream(2)), KeyLevelError);
}

TEST_CASE("negative control: stripping decorations breaks the decoration law") {
    GadgetFixture f;
    GadgetKey corrupted = f.key;
    corrupted.network.decorated.clear();
    Rng rng(0x717);
    Rng enc = rng.stream(0);
    LweCiphertext control = he_encrypt(f.t1.params, f.chain.pairs[0].second, 1, enc);
    GadgetOutput out = gadget_apply(corrupted, kPlusI, control, rng.stream(1));
    // The accept exit is still reached but no phase-down fires: the law
    // traversed_decorations == output detects the corruption.
    CHECK(he_decrypt(f.t1.params, f.chain.pairs[0].first, control) == 1);
    CHECK(!out.fired);
    GadgetResolved res = gadget_resolve(f.t1.params, f.chain.pairs[1].first, out);
    CHECK(fidelity_pair(res.state, kPlus) < 0.9);  // phase-down missing
}
