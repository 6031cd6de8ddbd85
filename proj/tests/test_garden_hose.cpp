#include <doctest.h>

#include <set>

#include "qfhe/fixtures.hpp"
#include "qfhe/garden_hose.hpp"
#include "qfhe/modmath.hpp"

using namespace qfhe;

namespace {

std::vector<uint8_t> bits_of(uint32_t v, uint32_t n) {
    std::vector<uint8_t> x(n);
    for (uint32_t i = 0; i < n; ++i) x[i] = (v >> i) & 1;
    return x;
}

struct T1Net {
    T1Fixture t1 = t1_fixture();
    MaProgram prog;
    LayeredBp bp;
    PipeNetwork net;
    BobSymbols symbols;

    T1Net() {
        prog = compile_lwe_dec(t1.ct, 17);
        bp = bp_from_ma(prog, std::vector<Reader>(4, Reader::Alice));
        net = gh_build(bp);
        symbols = bob_symbols_from_bp(bp);
    }
};

}  // namespace

TEST_CASE("pipe counts follow the construction") {
    T1Net f;
    CHECK(f.net.pipe_count() == 4 * 17 * 4 + 1);
    CHECK(f.net.pipe_count() == gh_pipe_count(17, 4));
    CHECK(reduced_network().pipe_count() == 9);
    // One entry, 2q bundles per layer, 2q arrivals per interior boundary,
    // 2q exits.
    std::array<size_t, 5> by_role{};
    for (const auto& p : f.net.pipes) by_role[static_cast<size_t>(p.role)]++;
    CHECK(by_role[static_cast<size_t>(PipeRole::Entry)] == 1);
    CHECK(by_role[static_cast<size_t>(PipeRole::Bundle0)] == 17 * 4);
    CHECK(by_role[static_cast<size_t>(PipeRole::Bundle1)] == 17 * 4);
    CHECK(by_role[static_cast<size_t>(PipeRole::Interface)] == 2 * 17 * 3);
    CHECK(by_role[static_cast<size_t>(PipeRole::Exit)] == 2 * 17);
}

TEST_CASE("decorations sit on accepting exits only") {
    T1Net f;
    for (uint32_t pid : f.net.decorated) {
        const Pipe& p = f.net.pipes[pid];
        CHECK(p.role == PipeRole::Exit);
        CHECK(f.net.accepts(p.state_index));
    }
    CHECK(f.net.decorated.size() == 2 * 8);  // accept zone {5..12}, both lanes
}

TEST_CASE("key-side wiring follows the selection bits") {
    T1Net f;
    Matching m = gh_wire_alice(f.net, f.t1.sk.bits);  // (1,0,1,1)
    CHECK(m.pairs.size() == 1 + 17 * 3);
    // Layer 1: entry routes into bundle 1.
    std::pair<uint32_t, uint32_t> first{
        end_id(f.net.entry_pipe, Side::A),
        end_id(f.net.bundle_pipe(1, 0, 1), Side::A)};
    if (first.first > first.second) std::swap(first.first, first.second);
    CHECK(std::find(m.pairs.begin(), m.pairs.end(), first) != m.pairs.end());
    // Layer 2 reads bit 0: every junction lands in bundle 0 of layer 2.
    for (auto [a, b] : m.pairs) {
        const Pipe& pb = f.net.pipes[end_pipe(b)];
        const Pipe& pa = f.net.pipes[end_pipe(a)];
        const Pipe& bundle = pb.role == PipeRole::Bundle0 || pb.role == PipeRole::Bundle1 ? pb : pa;
        uint32_t expect = f.t1.sk.bits[bundle.layer - 1];
        CHECK(bundle.lane == expect);
    }
    CHECK_THROWS_AS(gh_wire_alice(f.net, std::vector<uint8_t>{1, 0}), InputError);

    // All-zero bits route through bundle 0 everywhere.
    Matching zeros = gh_wire_alice(f.net, std::vector<uint8_t>{0, 0, 0, 0});
    for (auto [a, b] : zeros.pairs) {
        const Pipe& pb = f.net.pipes[end_pipe(b)];
        if (pb.role == PipeRole::Bundle0 || pb.role == PipeRole::Bundle1) CHECK(pb.lane == 0);
    }
}

TEST_CASE("flipping one selection bit only rewires its neighborhood") {
    T1Net f;
    for (uint32_t flip = 0; flip < 4; ++flip) {
        auto bits = f.t1.sk.bits;
        Matching base = gh_wire_alice(f.net, bits);
        bits[flip] ^= 1;
        Matching changed = gh_wire_alice(f.net, bits);
        std::set<std::pair<uint32_t, uint32_t>> b(base.pairs.begin(), base.pairs.end());
        std::set<std::pair<uint32_t, uint32_t>> c(changed.pairs.begin(), changed.pairs.end());
        std::vector<std::pair<uint32_t, uint32_t>> delta;
        for (auto pr : b)
            if (!c.count(pr)) delta.push_back(pr);
        // Affected junctions select into layer flip+1 or read its lane at
        // layer flip+2; each rank touches at most q junctions.
        CHECK(delta.size() <= 2 * 17);
        for (auto [a, bb] : delta) {
            uint32_t bundle_layer = 0;
            for (uint32_t e : {a, bb}) {
                const Pipe& p = f.net.pipes[end_pipe(e)];
                if (p.role == PipeRole::Bundle0 || p.role == PipeRole::Bundle1)
                    bundle_layer = p.layer;
            }
            CHECK((bundle_layer == flip + 1 || bundle_layer == flip + 2));
        }
    }
}

TEST_CASE("evaluator wiring applies the layer constants") {
    T1Net f;
    Matching m = gh_wire_bob(f.net, f.symbols);
    CHECK(m.pairs.size() == 2 * 17 * 4);

    // Layer 2 constant is (17-5) = 12: bundle-1 exit j lands on interface
    // state (j+12) mod 17; bundle-0 keeps the state.
    for (uint32_t j = 0; j < 17; ++j) {
        for (uint32_t branch = 0; branch < 2; ++branch) {
            uint32_t src = end_id(f.net.bundle_pipe(2, j, branch), Side::B);
            uint32_t want_state = branch ? (j + 12) % 17 : j;
            uint32_t dst = end_id(f.net.interface_pipe(3, want_state, branch), Side::B);
            auto pr = std::minmax(src, dst);
            CHECK(std::find(m.pairs.begin(), m.pairs.end(),
                            std::make_pair(pr.first, pr.second)) != m.pairs.end());
        }
    }
    // Layer 1 folds the start state: bundle-1 exit j -> (j + 14 + 13) mod 17.
    uint32_t src = end_id(f.net.bundle_pipe(1, 0, 1), Side::B);
    uint32_t dst = end_id(f.net.interface_pipe(2, (0 + 14 + 13) % 17, 1), Side::B);
    auto pr = std::minmax(src, dst);
    CHECK(std::find(m.pairs.begin(), m.pairs.end(), std::make_pair(pr.first, pr.second)) !=
          m.pairs.end());

    // Zero constants wire both bundles identically up to the lane tag:
    // bundle b's pipe j keeps state j.
    BobSymbols zeroed = f.symbols;
    zeroed.adds.assign(4, {0, 0});
    zeroed.start_state = 0;
    Matching z = gh_wire_bob(f.net, zeroed);
    std::set<std::pair<uint32_t, uint32_t>> zset(z.pairs.begin(), z.pairs.end());
    for (uint32_t l = 1; l <= 4; ++l)
        for (uint32_t j = 0; j < 17; ++j)
            for (uint32_t branch = 0; branch < 2; ++branch) {
                uint32_t s = end_id(f.net.bundle_pipe(l, j, branch), Side::B);
                uint32_t d = l == 4 ? end_id(f.net.exit_pipe(j, branch), Side::B)
                                    : end_id(f.net.interface_pipe(l + 1, j, branch), Side::B);
                auto p = std::minmax(s, d);
                CHECK(zset.count({p.first, p.second}) == 1);
            }

    BobSymbols bad = f.symbols;
    bad.adds[2].second = 17;
    CHECK_THROWS_AS(gh_wire_bob(f.net, bad), InputError);
}

TEST_CASE("water reaches the decryption state") {
    T1Net f;
    Matching alice = gh_wire_alice(f.net, f.t1.sk.bits);
    Matching bob = gh_wire_bob(f.net, f.symbols);
    WaterTrace tr = gh_flow(f.net, alice, bob);
    CHECK(tr.exit_state == 9);
    CHECK(tr.output == 1);
    CHECK(tr.traversed_decorations == 1);
    CHECK(f.net.pipes[tr.exit_pipe].role == PipeRole::Exit);
    // Faithful simulation: interface arrivals carry the partial sums.
    MaTrace mt = ma_evaluate(f.prog, f.t1.sk.bits);
    std::vector<uint32_t> interface_states;
    for (uint32_t e : tr.visited_ends) {
        const Pipe& p = f.net.pipes[end_pipe(e)];
        if (p.role == PipeRole::Interface && end_side(e) == Side::B)
            interface_states.push_back(p.state_index);
    }
    REQUIRE(interface_states.size() == 3);
    for (size_t l = 0; l < 3; ++l) CHECK(interface_states[l] == mt.states[l + 1]);
}

TEST_CASE("zero ciphertext exits at the body state") {
    T1Fixture t1 = t1_fixture();
    for (uint64_t body : {0ull, 6ull, 13ull}) {
        LweCiphertext ct;
        ct.level = 0;
        ct.mask = {0, 0, 0, 0};
        ct.body = body;
        ct.noise_budget = 3;
        MaProgram prog = compile_lwe_dec(ct, 17);
        LayeredBp bp = bp_from_ma(prog, std::vector<Reader>(4, Reader::Alice));
        PipeNetwork net = gh_build(bp);
        WaterTrace tr = gh_flow(net, gh_wire_alice(net, t1.sk.bits),
                                gh_wire_bob(net, bob_symbols_from_bp(bp)));
        CHECK(tr.exit_state == body);
        CHECK(tr.output == round_bit(body, 17));
    }
}

TEST_CASE("flow output equals decryption across keys and ciphertexts") {
    T1Fixture t1 = t1_fixture();
    Rng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        LweCiphertext ct;
        ct.level = 0;
        ct.mask = {rng.below(17), rng.below(17), rng.below(17), rng.below(17)};
        ct.body = rng.below(17);
        ct.noise_budget = 3;
        MaProgram prog = compile_lwe_dec(ct, 17);
        LayeredBp bp = bp_from_ma(prog, std::vector<Reader>(4, Reader::Alice));
        PipeNetwork net = gh_build(bp);
        Matching bob = gh_wire_bob(net, bob_symbols_from_bp(bp));
        for (uint32_t v = 0; v < 16; ++v) {
            auto x = bits_of(v, 4);
            WaterTrace tr = gh_flow(net, gh_wire_alice(net, x), bob);
            CHECK(tr.output == he_decrypt(t1.params, SecretKey{x, 0}, ct));
            CHECK(tr.output == bp_evaluate(bp, x).output);
            CHECK(tr.traversed_decorations == static_cast<uint32_t>(tr.output));
        }
    }
}

TEST_CASE("party locality: each side's wiring ignores the other's input") {
    T1Net f;
    Rng rng(505);
    Matching alice = gh_wire_alice(f.net, f.t1.sk.bits);
    for (int i = 0; i < 100; ++i) {
        // Alice's matching is a function of her bits alone: rebuilt against
        // any counterpart symbols it stays identical.
        CHECK(gh_wire_alice(f.net, f.t1.sk.bits) == alice);
        BobSymbols sym;
        sym.start_state = rng.below(17);
        for (int l = 0; l < 4; ++l) sym.adds.push_back({rng.below(17), rng.below(17)});
        Matching bob = gh_wire_bob(f.net, sym);
        CHECK(gh_wire_bob(f.net, sym) == bob);
    }
}

TEST_CASE("malformed matchings are rejected") {
    T1Net f;
    Matching alice = gh_wire_alice(f.net, f.t1.sk.bits);
    Matching bob = gh_wire_bob(f.net, f.symbols);

    Matching dup = alice;
    dup.pairs.push_back(dup.pairs.front());
    CHECK_THROWS_AS(gh_flow(f.net, dup, bob), FlowError);

    // A two-pipe loop: water returns to the faucet.
    PipeNetwork net = reduced_network();
    Matching a2;
    a2.add(end_id(net.entry_pipe, Side::A), end_id(net.bundle_pipe(1, 0, 0), Side::A));
    Matching b2;
    b2.add(end_id(net.bundle_pipe(1, 0, 0), Side::B), end_id(net.entry_pipe, Side::B));
    CHECK_THROWS_AS(gh_flow(net, a2, b2), FlowError);
}

TEST_CASE("dot emission shows pipes and party-colored junctions") {
    T1Net f;
    Matching alice = gh_wire_alice(f.net, f.t1.sk.bits);
    Matching bob = gh_wire_bob(f.net, f.symbols);
    std::string dot = gh_to_dot(f.net, &alice, &bob);
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(dot.find("crimson") != std::string::npos);
    CHECK(dot.find("steelblue") != std::string::npos);
    CHECK(dot.find("Pdg") != std::string::npos);
}
