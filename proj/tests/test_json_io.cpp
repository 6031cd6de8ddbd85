#include <doctest.h>

#include "qfhe/fixtures.hpp"
#include "qfhe/json_io.hpp"
#include "qfhe/mbqc.hpp"

using namespace qfhe;

TEST_CASE("ciphertext serialization is canonical and size-stable") {
    T1Fixture t1 = t1_fixture();
    std::string a = ciphertext_to_json(t1.params, t1.ct);
    LweParams p2;
    LweCiphertext back = ciphertext_from_json(a, &p2);
    CHECK(p2 == t1.params);
    CHECK(back == t1.ct);
    CHECK(ciphertext_to_json(p2, back) == a);

    // Different stored values, identical byte size.
    LweCiphertext other = encrypt_raw(t1.params, t1.sk, {16, 0, 1, 9}, 0, 0);
    CHECK(ciphertext_to_json(t1.params, other).size() == a.size());
}

TEST_CASE("large moduli ride as decimal strings") {
    LweParams p{2, uint64_t{1} << 24, 2, 1, 1, 100};
    SecretKey sk{{1, 0}, 0};
    LweCiphertext ct = encrypt_raw(p, sk, {(uint64_t{1} << 24) - 1, 12345}, 0, 1);
    std::string s = ciphertext_to_json(p, ct);
    CHECK(s.find("\"16777215\"") != std::string::npos);
    LweCiphertext back = ciphertext_from_json(s);
    CHECK(back == ct);
}

TEST_CASE("program and network forms round-trip behaviorally") {
    T1Fixture t1 = t1_fixture();
    MaProgram prog = compile_lwe_dec(t1.ct, 17);
    MaProgram prog2 = ma_program_from_json(ma_program_to_json(prog));
    CHECK(ma_program_to_json(prog2) == ma_program_to_json(prog));
    CHECK(ma_evaluate(prog2, t1.sk.bits).states == ma_evaluate(prog, t1.sk.bits).states);

    LayeredBp bp = bp_from_ma(prog, std::vector<Reader>(4, Reader::Alice));
    LayeredBp bp2 = bp_from_json(bp_to_json(bp));
    CHECK(bp_to_json(bp2) == bp_to_json(bp));
    CHECK(bp_evaluate(bp2, t1.sk.bits).path == bp_evaluate(bp, t1.sk.bits).path);

    PipeNetwork net = gh_build(bp);
    PipeNetwork net2 = network_from_json(network_to_json(net));
    CHECK(network_to_json(net2) == network_to_json(net));
    CHECK(net2.pipe_count() == net.pipe_count());
    Matching alice = gh_wire_alice(net, t1.sk.bits);
    Matching alice2 = matching_from_json(matching_to_json(alice));
    CHECK(alice2 == alice);
}

TEST_CASE("keychain round-trips bit-exactly") {
    KeyChain chain = he_keygen(t1_fixture().params, 21);
    std::string a = keychain_to_json(chain);
    CHECK(keychain_to_json(keychain_from_json(a)) == a);
}

TEST_CASE("parse failures carry line and column") {
    try {
        ciphertext_from_json("{\n  \"params\": {\n  broken\n}");
        FAIL("expected a parse error");
    } catch (const InputError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("column") != std::string::npos);
    }
}

TEST_CASE("circuit wire format") {
    Circuit c = circuit_from_json(
        R"([{"g":"H","q":[0]},{"g":"CNOT","q":[0,1]},{"g":"T","q":[0]}])");
    CHECK(c.qubit_count == 2);
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[0].op == CircOp::H);
    CHECK(c.gates[1].op == CircOp::Cnot);
    CHECK(c.gates[1].q1 == 1);
    CHECK(c.gates[2].op == CircOp::T);
    CHECK(c.t_count() == 1);

    Circuit c2 = circuit_from_json(circuit_to_json(c));
    CHECK(circuit_to_json(c2) == circuit_to_json(c));
    CHECK_THROWS_AS(circuit_from_json(R"([{"g":"CCZ","q":[0,1,2]}])"), InputError);
    CHECK_THROWS_AS(circuit_from_json("[{\"g\":\"H\""), InputError);
}

TEST_CASE("gadget key serialization is deterministic") {
    T1Fixture t1 = t1_fixture();
    KeyChain chain = he_keygen(t1.params, 22);
    Rng rng(23);
    GadgetKey key = gadget_gen(t1.params, chain.pairs[0].first, chain.pairs[1].second, rng);
    std::string a = gadget_key_to_json(key);
    CHECK(gadget_key_to_json(gadget_key_from_json(a)) == a);
}
