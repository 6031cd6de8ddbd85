#include "qfhe/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>

#include <json.hpp>

#include "qfhe/modmath.hpp"

namespace qfhe {
namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Byte offset -> line/column for the diagnostic.
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError("json parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
}

std::string zpad(uint64_t v, uint32_t width) {
    std::string s = std::to_string(v);
    if (s.size() < width) s.insert(0, width - s.size(), '0');
    return s;
}

json zq(uint64_t v, uint64_t q) { return zpad(v, decimal_digits(q - 1)); }

uint64_t num(const json& j, const char* what) {
    try {
        if (j.is_string()) {
            const std::string& s = j.get_ref<const std::string&>();
            uint64_t v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw InputError(std::string("json: bad integer in ") + what);
            return v;
        }
        return j.get<uint64_t>();
    } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("json: expected integer for ") + what);
    }
}

json params_j(const LweParams& p) {
    return json{{"n", p.n},       {"q", std::to_string(p.q)}, {"p", p.p},
                {"error_bound", p.error_bound}, {"levels", p.levels},
                {"xor_budget", p.xor_budget}};
}

LweParams params_p(const json& j) {
    LweParams p;
    p.n = num(j.at("n"), "n");
    p.q = num(j.at("q"), "q");
    p.p = num(j.at("p"), "p");
    p.error_bound = num(j.at("error_bound"), "error_bound");
    p.levels = num(j.at("levels"), "levels");
    p.xor_budget = num(j.at("xor_budget"), "xor_budget");
    return p;
}

json ciphertext_j(const LweParams& p, const LweCiphertext& ct) {
    json mask = json::array();
    for (uint64_t v : ct.mask) mask.push_back(zq(v, p.q));
    return json{{"params", params_j(p)},
                {"level", zpad(ct.level, decimal_digits(p.levels))},
                {"mask", std::move(mask)},
                {"body", zq(ct.body, p.q)},
                {"noise_budget", zpad(static_cast<uint64_t>(std::max<int64_t>(ct.noise_budget, 0)),
                                      decimal_digits(p.max_noise() + 1))}};
}

LweCiphertext ciphertext_p(const json& j, LweParams* params_out) {
    LweParams p = params_p(j.at("params"));
    if (params_out) *params_out = p;
    LweCiphertext ct;
    ct.level = num(j.at("level"), "level");
    for (const auto& v : j.at("mask")) ct.mask.push_back(num(v, "mask"));
    ct.body = num(j.at("body"), "body");
    ct.noise_budget = static_cast<int64_t>(num(j.at("noise_budget"), "noise_budget"));
    return ct;
}

json secret_key_j(const LweParams& p, const SecretKey& sk) {
    json bits = json::array();
    for (uint8_t b : sk.bits) bits.push_back(static_cast<int>(b));
    return json{{"bits", std::move(bits)}, {"level", zpad(sk.level, decimal_digits(p.levels))}};
}

SecretKey secret_key_p(const json& j) {
    SecretKey sk;
    for (const auto& b : j.at("bits")) sk.bits.push_back(static_cast<uint8_t>(num(b, "bits")));
    sk.level = num(j.at("level"), "level");
    return sk;
}

json public_key_j(const LweParams& p, const PublicKey& pk) {
    json samples = json::array();
    for (const auto& s : pk.samples) {
        json mask = json::array();
        for (uint64_t v : s.mask) mask.push_back(zq(v, p.q));
        samples.push_back(json{{"mask", std::move(mask)}, {"body", zq(s.body, p.q)}});
    }
    return json{{"samples", std::move(samples)},
                {"level", zpad(pk.level, decimal_digits(p.levels))}};
}

PublicKey public_key_p(const json& j) {
    PublicKey pk;
    for (const auto& s : j.at("samples")) {
        PkSample smp;
        for (const auto& v : s.at("mask")) smp.mask.push_back(num(v, "mask"));
        smp.body = num(s.at("body"), "body");
        pk.samples.push_back(std::move(smp));
    }
    pk.level = num(j.at("level"), "level");
    return pk;
}

json ma_j(const MaProgram& prog) {
    json ins = json::array();
    for (const auto& i : prog.instructions)
        ins.push_back(json::array({i.var_index, std::to_string(i.add0), std::to_string(i.add1)}));
    json acc = json::array();
    for (uint64_t s : prog.accept_sorted) acc.push_back(std::to_string(s));
    return json{{"modulus", std::to_string(prog.modulus)},
                {"start", std::to_string(prog.start_state)},
                {"instructions", std::move(ins)},
                {"accept", std::move(acc)},
                {"arity", prog.input_arity}};
}

MaProgram ma_p(const json& j) {
    MaProgram prog;
    prog.modulus = num(j.at("modulus"), "modulus");
    prog.start_state = num(j.at("start"), "start");
    for (const auto& i : j.at("instructions"))
        prog.instructions.push_back({static_cast<uint32_t>(num(i.at(0), "var")),
                                     num(i.at(1), "add0"), num(i.at(2), "add1")});
    for (const auto& s : j.at("accept")) prog.accept_sorted.push_back(num(s, "accept"));
    prog.input_arity = static_cast<uint32_t>(num(j.at("arity"), "arity"));
    prog.validate();
    return prog;
}

const char* reader_name(Reader r) {
    switch (r) {
        case Reader::Alice: return "alice";
        case Reader::Bob: return "bob";
        case Reader::Shared: return "shared";
    }
    return "?";
}

Reader reader_p(const std::string& s) {
    if (s == "alice") return Reader::Alice;
    if (s == "bob") return Reader::Bob;
    if (s == "shared") return Reader::Shared;
    throw InputError("json: unknown reader tag");
}

json bp_j(const LayeredBp& bp) {
    json layers = json::array();
    for (const auto& l : bp.layers) {
        json m0 = json::array(), m1 = json::array();
        for (uint32_t t : l.map0) m0.push_back(t);
        for (uint32_t t : l.map1) m1.push_back(t);
        layers.push_back(json{{"var", l.var_index},
                              {"states", l.state_count},
                              {"map0", std::move(m0)},
                              {"map1", std::move(m1)},
                              {"reader", reader_name(l.reader)}});
    }
    json acc = json::array();
    for (uint32_t s : bp.accept_sorted) acc.push_back(s);
    return json{{"layers", std::move(layers)},
                {"start", bp.start_state},
                {"accept", std::move(acc)},
                {"arity", bp.input_arity}};
}

LayeredBp bp_p(const json& j) {
    LayeredBp bp;
    for (const auto& l : j.at("layers")) {
        BpLayer layer;
        layer.var_index = static_cast<uint32_t>(num(l.at("var"), "var"));
        layer.state_count = static_cast<uint32_t>(num(l.at("states"), "states"));
        for (const auto& t : l.at("map0")) layer.map0.push_back(static_cast<uint32_t>(num(t, "map0")));
        for (const auto& t : l.at("map1")) layer.map1.push_back(static_cast<uint32_t>(num(t, "map1")));
        layer.reader = reader_p(l.at("reader").get<std::string>());
        bp.layers.push_back(std::move(layer));
    }
    bp.start_state = static_cast<uint32_t>(num(j.at("start"), "start"));
    for (const auto& s : j.at("accept")) bp.accept_sorted.push_back(static_cast<uint32_t>(num(s, "accept")));
    bp.input_arity = static_cast<uint32_t>(num(j.at("arity"), "arity"));
    return bp;
}

json network_j(const PipeNetwork& net) {
    json readers = json::array();
    for (Reader r : net.reader_tags) readers.push_back(reader_name(r));
    json acc = json::array();
    for (uint32_t s : net.accept_sorted) acc.push_back(s);
    json dec = json::array();
    for (uint32_t d : net.decorated) dec.push_back(d);
    return json{{"modulus", std::to_string(net.modulus)},
                {"layers", net.layer_count},
                {"pipes", net.pipe_count()},
                {"entry_pipe", net.entry_pipe},
                {"accept", std::move(acc)},
                {"decorated", std::move(dec)},
                {"readers", std::move(readers)}};
}

PipeNetwork network_p(const json& j) {
    uint64_t q = num(j.at("modulus"), "modulus");
    uint32_t layers = static_cast<uint32_t>(num(j.at("layers"), "layers"));
    std::vector<uint32_t> acc;
    for (const auto& s : j.at("accept")) acc.push_back(static_cast<uint32_t>(num(s, "accept")));
    std::vector<Reader> readers;
    for (const auto& r : j.at("readers")) readers.push_back(reader_p(r.get<std::string>()));
    PipeNetwork net = gh_build_shape(q, layers, std::move(acc), std::move(readers));
    if (net.pipe_count() != num(j.at("pipes"), "pipes"))
        throw InputError("json: pipe count does not match the construction");
    return net;
}

json matching_j(const Matching& m) {
    json pairs = json::array();
    for (auto [a, b] : m.pairs) pairs.push_back(json::array({a, b}));
    return json{{"pairs", std::move(pairs)}};
}

Matching matching_p(const json& j) {
    Matching m;
    for (const auto& pr : j.at("pairs"))
        m.add(static_cast<uint32_t>(num(pr.at(0), "end")), static_cast<uint32_t>(num(pr.at(1), "end")));
    m.canonicalize();
    return m;
}

// Outcome transcripts ride as one bit string, two bits per junction in key
// order.
json outcomes_j(const OutcomeTable& t) {
    json keys = json::array();
    std::string bits;
    bits.reserve(2 * t.entries.size());
    for (const auto& [k, o] : t.entries) {
        keys.push_back(k);
        bits.push_back(o.m1 ? '1' : '0');
        bits.push_back(o.m2 ? '1' : '0');
    }
    return json{{"keys", std::move(keys)}, {"bits", std::move(bits)}};
}

OutcomeTable outcomes_p(const json& j) {
    OutcomeTable t;
    const auto& keys = j.at("keys");
    const std::string& bits = j.at("bits").get_ref<const std::string&>();
    if (bits.size() != 2 * keys.size()) throw InputError("json: outcome bit string length");
    for (size_t i = 0; i < keys.size(); ++i)
        t.put(static_cast<uint32_t>(num(keys.at(i), "key")),
              {static_cast<uint8_t>(bits[2 * i] == '1'), static_cast<uint8_t>(bits[2 * i + 1] == '1')});
    t.sort_entries();
    return t;
}

json gadget_key_j(const GadgetKey& key) {
    json sel = json::array();
    for (const auto& ct : key.selection_cts) sel.push_back(ciphertext_j(key.params, ct));
    return json{{"params", params_j(key.params)},
                {"level", key.level},
                {"network", network_j(key.network)},
                {"alice_matching", matching_j(key.alice_matching)},
                {"alice_outcomes", outcomes_j(key.alice_outcomes)},
                {"selection_cts", std::move(sel)},
                {"pk_next", public_key_j(key.params, key.pk_next)}};
}

GadgetKey gadget_key_p(const json& j) {
    GadgetKey key;
    key.params = params_p(j.at("params"));
    key.level = static_cast<uint32_t>(num(j.at("level"), "level"));
    key.network = network_p(j.at("network"));
    key.alice_matching = matching_p(j.at("alice_matching"));
    key.alice_outcomes = outcomes_p(j.at("alice_outcomes"));
    for (const auto& ct : j.at("selection_cts")) key.selection_cts.push_back(ciphertext_p(ct, nullptr));
    key.pk_next = public_key_p(j.at("pk_next"));
    return key;
}

std::string hex_double(double d) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

}  // namespace

std::string params_to_json(const LweParams& p) { return params_j(p).dump(2); }
LweParams params_from_json(const std::string& text) { return params_p(parse(text)); }

std::string secret_key_to_json(const LweParams& p, const SecretKey& sk) {
    return secret_key_j(p, sk).dump(2);
}
SecretKey secret_key_from_json(const std::string& text) { return secret_key_p(parse(text)); }

std::string ciphertext_to_json(const LweParams& p, const LweCiphertext& ct) {
    return ciphertext_j(p, ct).dump(2);
}
LweCiphertext ciphertext_from_json(const std::string& text, LweParams* params_out) {
    return ciphertext_p(parse(text), params_out);
}

std::string keychain_to_json(const KeyChain& chain) {
    json pairs = json::array();
    for (const auto& [sk, pk] : chain.pairs)
        pairs.push_back(json{{"sk", secret_key_j(chain.params, sk)},
                             {"pk", public_key_j(chain.params, pk)}});
    return json{{"params", params_j(chain.params)}, {"pairs", std::move(pairs)}}.dump(2);
}

KeyChain keychain_from_json(const std::string& text) {
    json j = parse(text);
    KeyChain chain;
    chain.params = params_p(j.at("params"));
    for (const auto& pr : j.at("pairs"))
        chain.pairs.emplace_back(secret_key_p(pr.at("sk")), public_key_p(pr.at("pk")));
    return chain;
}

std::string ma_program_to_json(const MaProgram& prog) { return ma_j(prog).dump(2); }
MaProgram ma_program_from_json(const std::string& text) { return ma_p(parse(text)); }

std::string bp_to_json(const LayeredBp& bp) { return bp_j(bp).dump(2); }
LayeredBp bp_from_json(const std::string& text) { return bp_p(parse(text)); }

std::string network_to_json(const PipeNetwork& net) { return network_j(net).dump(2); }
PipeNetwork network_from_json(const std::string& text) { return network_p(parse(text)); }

std::string matching_to_json(const Matching& m) { return matching_j(m).dump(2); }
Matching matching_from_json(const std::string& text) { return matching_p(parse(text)); }

std::string water_trace_to_json(const WaterTrace& tr) {
    json ends = json::array();
    for (uint32_t e : tr.visited_ends) ends.push_back(e);
    return json{{"visited_ends", std::move(ends)},
                {"exit_end", tr.exit_end},
                {"exit_state", tr.exit_state},
                {"exit_lane", tr.exit_lane},
                {"traversed_decorations", tr.traversed_decorations},
                {"output", tr.output}}
        .dump(2);
}

std::string schedule_to_json(const Schedule& s) {
    json rounds = json::array();
    for (const auto& r : s.rounds) {
        json ms = json::array();
        for (uint32_t id : r.measurement_ids) {
            const auto& m = s.measurements[id];
            json deps = json::array();
            if (m.round > 0) deps.push_back(m.round - 1);
            ms.push_back(json{{"pipe", m.end_a / 2}, {"basis", "bell"}, {"deps", std::move(deps)}});
        }
        const char* stage = r.stage == RoundStage::Inject ? "inject"
                            : r.stage == RoundStage::Alice ? "alice"
                                                           : "bob";
        rounds.push_back(json{{"stage", stage},
                              {"layer", r.layer},
                              {"precomputed", r.precomputed},
                              {"measurements", std::move(ms)}});
    }
    return json{{"rounds", std::move(rounds)}}.dump(2);
}

std::string gadget_key_to_json(const GadgetKey& key) { return gadget_key_j(key).dump(2); }
GadgetKey gadget_key_from_json(const std::string& text) { return gadget_key_p(parse(text)); }

std::string gadget_output_to_json(const GadgetOutput& out) {
    // The transparent routing fields stay internal; this is the evaluator-side
    // record: ledger ciphertexts plus the server view.
    json loc = json::array();
    for (const auto& ct : out.loc_ct) {
        json mask = json::array();
        for (uint64_t v : ct.mask) mask.push_back(std::to_string(v));
        loc.push_back(json{{"level", ct.level},
                           {"mask", std::move(mask)},
                           {"body", std::to_string(ct.body)},
                           {"noise_budget", ct.noise_budget}});
    }
    json exits = json::array();
    for (uint32_t e : out.candidate_exits) exits.push_back(e);
    return json{{"level", out.level},
                {"candidate_exits", std::move(exits)},
                {"loc_ct", std::move(loc)},
                {"bob_matching", matching_j(out.server_view.bob_matching)},
                {"bob_outcomes", outcomes_j(out.server_view.bob_outcomes)}}
        .dump(2);
}

std::string qfhe_keys_to_json(const QfheKeys& keys) {
    json gk = json::array();
    for (const auto& g : keys.gadget_keys) gk.push_back(gadget_key_j(g));
    json chain_pairs = json::array();
    for (const auto& [sk, pk] : keys.chain.pairs)
        chain_pairs.push_back(json{{"sk", secret_key_j(keys.params, sk)},
                                   {"pk", public_key_j(keys.params, pk)}});
    return json{{"params", params_j(keys.params)},
                {"t_levels", keys.t_levels},
                {"chain", std::move(chain_pairs)},
                {"gadget_keys", std::move(gk)}}
        .dump(2);
}

QfheKeys qfhe_keys_from_json(const std::string& text) {
    json j = parse(text);
    QfheKeys keys;
    keys.params = params_p(j.at("params"));
    keys.t_levels = static_cast<uint32_t>(num(j.at("t_levels"), "t_levels"));
    keys.chain.params = keys.params;
    for (const auto& pr : j.at("chain"))
        keys.chain.pairs.emplace_back(secret_key_p(pr.at("sk")), public_key_p(pr.at("pk")));
    for (const auto& g : j.at("gadget_keys")) keys.gadget_keys.push_back(gadget_key_p(g));
    return keys;
}

std::string qfhe_ciphertext_to_json(const LweParams& p, const QfheCiphertext& ct) {
    json pads = json::array();
    for (const auto& qp : ct.pads)
        pads.push_back(json{{"a", ciphertext_j(p, qp.a)}, {"b", ciphertext_j(p, qp.b)}});
    json amps = json::array();
    for (const cplx& a : ct.state.amplitudes())
        amps.push_back(hex_double(a.real()) + ":" + hex_double(a.imag()));
    return json{{"level", zpad(ct.level, decimal_digits(p.levels))},
                {"pads", std::move(pads)},
                {"state", json{{"qubits", ct.state.qubit_count()}, {"amps", std::move(amps)}}}}
        .dump(2);
}

std::string circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) {
        const char* name = nullptr;
        json q = json::array();
        switch (g.op) {
            case CircOp::X: name = "X"; q.push_back(g.q0); break;
            case CircOp::Z: name = "Z"; q.push_back(g.q0); break;
            case CircOp::H: name = "H"; q.push_back(g.q0); break;
            case CircOp::S: name = "S"; q.push_back(g.q0); break;
            case CircOp::T: name = "T"; q.push_back(g.q0); break;
            case CircOp::Cnot:
                name = "CNOT";
                q.push_back(g.q0);
                q.push_back(g.q1);
                break;
        }
        gates.push_back(json{{"g", name}, {"q", std::move(q)}});
    }
    return json{{"qubits", c.qubit_count}, {"gates", std::move(gates)}}.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    json j = parse(text);
    Circuit c;
    const json* gates = nullptr;
    if (j.is_array()) {
        gates = &j;  // bare gate list; qubit count inferred
    } else {
        c.qubit_count = static_cast<uint32_t>(num(j.at("qubits"), "qubits"));
        gates = &j.at("gates");
    }
    uint32_t max_q = 0;
    for (const auto& g : *gates) {
        std::string name = g.at("g").get<std::string>();
        const auto& q = g.at("q");
        CircuitGate cg;
        if (name == "X") cg.op = CircOp::X;
        else if (name == "Z") cg.op = CircOp::Z;
        else if (name == "H") cg.op = CircOp::H;
        else if (name == "S") cg.op = CircOp::S;
        else if (name == "T") cg.op = CircOp::T;
        else if (name == "CNOT") cg.op = CircOp::Cnot;
        else throw InputError("circuit: unknown gate " + name);
        cg.q0 = static_cast<uint32_t>(num(q.at(0), "q"));
        if (cg.op == CircOp::Cnot) cg.q1 = static_cast<uint32_t>(num(q.at(1), "q"));
        max_q = std::max({max_q, cg.q0, cg.q1});
        c.gates.push_back(cg);
    }
    if (j.is_array()) c.qubit_count = max_q + 1;
    c.validate();
    return c;
}

std::string tables_to_json(const Tables& t) {
    json params = json::array();
    for (const auto& r : t.params)
        params.push_back(json{{"label", r.label},
                              {"n", r.n},
                              {"q_log2", r.q_log2},
                              {"sigma", r.sigma},
                              {"width_bits", r.width_bits},
                              {"bp_length_log2", r.bp_length_log2},
                              {"epr_log2", r.epr_log2}});
    json cmp = json::array();
    for (const auto& r : t.compare)
        cmp.push_back(json{{"label", r.label},
                           {"barrington_epr_log2", r.barrington_epr_log2},
                           {"modsum_epr_log2", r.modsum_epr_log2}});
    return json{{"params", std::move(params)},
                {"compare", std::move(cmp)},
                {"hardness_note", t.hardness_note}}
        .dump(2);
}

std::string estimate_to_json(const Estimate& e) {
    json j{{"scheme", scheme_kind_name(e.scheme)},
           {"formula", e.formula},
           {"width_bits", e.width_bits},
           {"length", e.length},
           {"epr_pairs", e.value}};
    if (e.executable_pipes) j["executable_pipes"] = *e.executable_pipes;
    json anchors = json::array();
    for (const auto& a : e.anchors) anchors.push_back(a);
    j["anchors"] = std::move(anchors);
    return j.dump(2);
}

std::string audit_to_json(const std::vector<AuditRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(json{{"label", r.label},
                           {"status", r.pass ? "PASS" : "FLAG"},
                           {"width_times_length", r.product},
                           {"claimed_epr", r.claimed},
                           {"ratio", r.ratio}});
    return arr.dump(2);
}

}  // namespace qfhe
