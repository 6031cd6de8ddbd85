#include "qfhe/gadget.hpp"

#include <algorithm>

#include "qfhe/modmath.hpp"

namespace qfhe {
namespace {

// Stream tags: junction outcomes use the junction key directly; auxiliary
// draws sit far above any end id.
constexpr uint64_t kSelectionTag = 1ull << 40;
constexpr uint64_t kLedgerTag = 1ull << 41;

uint32_t junction_key(uint32_t a, uint32_t b) { return std::min(a, b); }

BellOutcome draw_outcome(const Rng& rng, uint32_t key) {
    Rng s = rng.stream(key);
    return {static_cast<uint8_t>(s.bit()), static_cast<uint8_t>(s.bit())};
}

}  // namespace

void OutcomeTable::put(uint32_t key, BellOutcome o) { entries.emplace_back(key, o); }

void OutcomeTable::sort_entries() {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

const BellOutcome* OutcomeTable::find(uint32_t key) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, uint32_t k) { return e.first < k; });
    return (it != entries.end() && it->first == key) ? &it->second : nullptr;
}

GadgetKey gadget_gen(const LweParams& params, const SecretKey& sk, const PublicKey& pk_next,
                     const Rng& rng) {
    if (pk_next.level != sk.level + 1) throw KeyLevelError("gadget: keys must sit at consecutive levels");
    if (sk.bits.size() != params.n) throw InputError("gadget: secret key arity mismatch");
    GadgetKey key;
    key.params = params;
    key.level = static_cast<uint32_t>(sk.level);
    key.network = gh_build_shape(params.q, static_cast<uint32_t>(params.n),
                                 [&] {
                                     auto acc = lwe_accept_set(params.q);
                                     return std::vector<uint32_t>(acc.begin(), acc.end());
                                 }(),
                                 std::vector<Reader>(params.n, Reader::Alice));
    key.alice_matching = gh_wire_alice(key.network, sk.bits);
    for (auto [a, b] : key.alice_matching.pairs)
        key.alice_outcomes.put(junction_key(a, b), draw_outcome(rng, junction_key(a, b)));
    key.alice_outcomes.sort_entries();
    key.selection_cts.reserve(params.n);
    for (uint64_t i = 0; i < params.n; ++i) {
        Rng enc = rng.stream(kSelectionTag + i);
        key.selection_cts.push_back(he_encrypt(params, pk_next, sk.bits[i], enc));
    }
    key.pk_next = pk_next;
    return key;
}

namespace {

GadgetOutput run_gadget(const GadgetKey& key, std::array<cplx, 2> data_in,
                        const LweCiphertext& control, const Rng& rng,
                        std::span<const uint32_t> forced_order) {
    const LweParams& params = key.params;
    if (control.level != key.level) throw KeyLevelError("gadget: control ciphertext at wrong level");
    if (control.mask.size() != params.n) throw InputError("gadget: control arity mismatch");
    const PipeNetwork& net = key.network;

    GadgetOutput out;
    out.level = key.level + 1;
    out.server_view.bob_matching = gh_wire_bob(net, bob_symbols_from_ct(control, params.q));

    // Evaluator-side outcomes, one stream per junction. An explicit order is
    // honored but cannot change any outcome.
    const uint32_t faucet = net.entry_end();
    auto draw_bob = [&](uint32_t k) { out.server_view.bob_outcomes.put(k, draw_outcome(rng, k)); };
    if (forced_order.empty()) {
        draw_bob(faucet);
        for (auto [a, b] : out.server_view.bob_matching.pairs) draw_bob(junction_key(a, b));
    } else {
        // Creation-time junctions already carry their recorded outcomes.
        for (uint32_t k : forced_order)
            if (!key.alice_outcomes.find(k)) draw_bob(k);
    }
    out.server_view.bob_outcomes.sort_entries();

    WaterTrace water = gh_flow(net, key.alice_matching, out.server_view.bob_matching);
    out.exit_end = water.exit_end;
    out.exit_state = water.exit_state;
    out.exit_lane = water.exit_lane;
    // Physical truth, not accept membership: on an intact network these
    // coincide, and the decoration law test compares them.
    out.fired = water.traversed_decorations > 0;

    for (const auto& p : net.pipes)
        if (p.role == PipeRole::Exit) out.candidate_exits.push_back(end_id(p.id, Side::A));

    // Chain execution along the water path. Hop 0 injects the data through
    // the faucet; each junction then moves it one pipe further. The phase
    // decoration sits on the exit pipe the accepting state flows into.
    ChainSim chain(data_in[0], data_in[1]);
    std::vector<int> path_m1, path_m2;
    auto hop = [&](BellOutcome o, bool decorated) {
        chain.teleport(o, decorated ? Decoration::Pdg : Decoration::None);
        path_m1.push_back(o.m1);
        path_m2.push_back(o.m2);
    };
    const BellOutcome* inject = out.server_view.bob_outcomes.find(faucet);
    if (!inject) throw FlowError("gadget: missing injection outcome");
    hop(*inject, net.is_decorated(end_pipe(faucet)));
    const auto& ends = water.visited_ends;
    for (size_t k = 1; k + 1 < ends.size(); k += 2) {
        uint32_t from = ends[k], to = ends[k + 1];
        uint32_t jk = junction_key(from, to);
        const BellOutcome* o = key.alice_outcomes.find(jk);
        if (!o) o = out.server_view.bob_outcomes.find(jk);
        if (!o) throw FlowError("gadget: missing junction outcome on the water path");
        hop(*o, net.is_decorated(end_pipe(to)));
    }
    auto [amps, frame] = chain.resolve();
    out.data = amps;
    out.frame = frame;

    // Location and correction ledger at the next level. Location bits are
    // emitted by the transparent evaluator; corrections re-trace the path as
    // one XOR chain over the transcript bits through he_eval_linear.
    Rng ledger = rng.stream(kLedgerTag);
    const uint32_t w = ceil_log2(params.q);
    for (uint32_t t = 0; t < w; ++t)
        out.loc_ct.push_back(he_encrypt(params, key.pk_next, (out.exit_state >> t) & 1, ledger));
    out.loc_ct.push_back(he_encrypt(params, key.pk_next, out.exit_lane & 1, ledger));

    std::vector<int> zbits = path_m2;
    if (out.fired) zbits.insert(zbits.end(), path_m1.begin(), path_m1.end());
    LweCiphertext seed_x = he_encrypt(params, key.pk_next, 0, ledger);
    LweCiphertext seed_z = he_encrypt(params, key.pk_next, 0, ledger);
    out.corr_x_ct = he_eval_linear(params, std::span(&seed_x, 1), path_m1);
    out.corr_z_ct = he_eval_linear(params, std::span(&seed_z, 1), zbits);
    return out;
}

}  // namespace

GadgetOutput gadget_apply(const GadgetKey& key, std::array<cplx, 2> data_in,
                          const LweCiphertext& control, const Rng& rng) {
    return run_gadget(key, data_in, control, rng, {});
}

GadgetOutput gadget_apply_ordered(const GadgetKey& key, std::array<cplx, 2> data_in,
                                  const LweCiphertext& control, const Rng& rng,
                                  std::span<const uint32_t> junction_keys) {
    return run_gadget(key, data_in, control, rng, junction_keys);
}

GadgetResolved gadget_resolve(const LweParams& params, const SecretKey& sk_next,
                              const GadgetOutput& out) {
    if (sk_next.level != out.level) throw KeyLevelError("gadget: resolve with wrong key level");
    GadgetResolved r;
    const uint32_t w = ceil_log2(params.q);
    if (out.loc_ct.size() != w + 1) throw InputError("gadget: malformed location ledger");
    for (uint32_t t = 0; t < w; ++t)
        r.exit_state |= static_cast<uint32_t>(he_decrypt(params, sk_next, out.loc_ct[t])) << t;
    r.exit_lane = static_cast<uint32_t>(he_decrypt(params, sk_next, out.loc_ct[w]));
    r.new_pauli.x = static_cast<uint8_t>(he_decrypt(params, sk_next, out.corr_x_ct));
    r.new_pauli.z = static_cast<uint8_t>(he_decrypt(params, sk_next, out.corr_z_ct));
    r.state = out.data;
    return r;
}

}  // namespace qfhe
