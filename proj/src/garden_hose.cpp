#include "qfhe/garden_hose.hpp"

#include <algorithm>
#include <sstream>

#include "qfhe/modmath.hpp"

namespace qfhe {
namespace {

// Pipe id layout: entry, then bundle ranks per layer (branch-0 block then
// branch-1 block), then interface ranks for layers 2..L, then the exit rank.
struct Layout {
    uint32_t q, layers;
    uint32_t bundle_base(uint32_t layer) const { return 1 + (layer - 1) * 2 * q; }
    uint32_t iface_base(uint32_t layer) const { return 1 + 2 * q * layers + (layer - 2) * 2 * q; }
    uint32_t exit_base() const { return 1 + 2 * q * layers + (layers - 1) * 2 * q; }
};

Layout layout_of(const PipeNetwork& net) {
    return Layout{static_cast<uint32_t>(net.modulus), net.layer_count};
}

}  // namespace

uint32_t PipeNetwork::bundle_pipe(uint32_t layer, uint32_t state, uint32_t branch) const {
    Layout ly = layout_of(*this);
    return ly.bundle_base(layer) + branch * ly.q + state;
}

uint32_t PipeNetwork::interface_pipe(uint32_t layer, uint32_t state, uint32_t lane) const {
    Layout ly = layout_of(*this);
    return ly.iface_base(layer) + lane * ly.q + state;
}

uint32_t PipeNetwork::exit_pipe(uint32_t state, uint32_t lane) const {
    Layout ly = layout_of(*this);
    return ly.exit_base() + lane * ly.q + state;
}

Side PipeNetwork::in_side(uint32_t pipe) const {
    PipeRole r = pipes[pipe].role;
    return (r == PipeRole::Bundle0 || r == PipeRole::Bundle1) ? Side::A : Side::B;
}

bool PipeNetwork::is_decorated(uint32_t pipe) const {
    return std::binary_search(decorated.begin(), decorated.end(), pipe);
}

bool PipeNetwork::accepts(uint32_t state) const {
    return std::binary_search(accept_sorted.begin(), accept_sorted.end(), state);
}

PipeNetwork gh_build_shape(uint64_t q, uint32_t layers, std::vector<uint32_t> accept_sorted,
                           std::vector<Reader> reader_tags) {
    if (layers < 1) throw InputError("gh: need at least one layer");
    if (reader_tags.size() != layers) throw InputError("gh: one reader tag per layer");
    PipeNetwork net;
    net.modulus = q;
    net.layer_count = layers;
    net.accept_sorted = std::move(accept_sorted);
    net.reader_tags = std::move(reader_tags);
    net.entry_pipe = 0;
    net.pipes.resize(gh_pipe_count(q, layers));
    net.pipes[0] = {0, 0, PipeRole::Entry, 0, 0};
    const uint32_t qq = static_cast<uint32_t>(q);
    for (uint32_t l = 1; l <= layers; ++l)
        for (uint32_t b = 0; b < 2; ++b)
            for (uint32_t j = 0; j < qq; ++j) {
                uint32_t id = net.bundle_pipe(l, j, b);
                net.pipes[id] = {id, l, b ? PipeRole::Bundle1 : PipeRole::Bundle0, j, b};
            }
    for (uint32_t l = 2; l <= layers; ++l)
        for (uint32_t lane = 0; lane < 2; ++lane)
            for (uint32_t j = 0; j < qq; ++j) {
                uint32_t id = net.interface_pipe(l, j, lane);
                net.pipes[id] = {id, l, PipeRole::Interface, j, lane};
            }
    for (uint32_t lane = 0; lane < 2; ++lane)
        for (uint32_t j = 0; j < qq; ++j) {
            uint32_t id = net.exit_pipe(j, lane);
            net.pipes[id] = {id, layers + 1, PipeRole::Exit, j, lane};
        }
    for (uint32_t s : net.accept_sorted)
        for (uint32_t lane = 0; lane < 2; ++lane) net.decorated.push_back(net.exit_pipe(s, lane));
    std::sort(net.decorated.begin(), net.decorated.end());
    return net;
}

PipeNetwork gh_build(const LayeredBp& bp) {
    if (bp.layers.empty()) throw InputError("gh: empty program");
    const uint32_t q = bp.layers.front().state_count;
    for (const auto& l : bp.layers)
        if (l.state_count != q) throw InputError("gh: uniform state count required");
    bp_add_constants(bp);  // rejects non-add-constant maps
    std::vector<Reader> readers;
    readers.reserve(bp.layers.size());
    for (const auto& l : bp.layers) readers.push_back(l.reader);
    return gh_build_shape(q, static_cast<uint32_t>(bp.layers.size()), bp.accept_sorted,
                          std::move(readers));
}

void Matching::add(uint32_t a, uint32_t b) {
    pairs.emplace_back(std::min(a, b), std::max(a, b));
}

void Matching::canonicalize() { std::sort(pairs.begin(), pairs.end()); }

Matching gh_wire_alice(const PipeNetwork& net, std::span<const uint8_t> bits) {
    if (bits.size() != net.layer_count) throw InputError("gh: one selection bit per layer");
    for (uint8_t b : bits)
        if (b > 1) throw InputError("gh: selection bits must be 0/1");
    const uint32_t q = static_cast<uint32_t>(net.modulus);
    Matching m;
    m.add(end_id(net.entry_pipe, Side::A), end_id(net.bundle_pipe(1, 0, bits[0]), Side::A));
    for (uint32_t l = 2; l <= net.layer_count; ++l)
        for (uint32_t j = 0; j < q; ++j)
            m.add(end_id(net.interface_pipe(l, j, bits[l - 2]), Side::A),
                  end_id(net.bundle_pipe(l, j, bits[l - 1]), Side::A));
    m.canonicalize();
    return m;
}

BobSymbols bob_symbols_from_bp(const LayeredBp& bp) {
    BobSymbols s;
    s.start_state = bp.start_state;
    s.adds = bp_add_constants(bp);
    return s;
}

BobSymbols bob_symbols_from_ct(const LweCiphertext& ct, uint64_t q) {
    BobSymbols s;
    s.start_state = ct.body % q;
    s.adds.reserve(ct.mask.size());
    for (uint64_t c : ct.mask) s.adds.emplace_back(0, mod_neg(c % q, q));
    return s;
}

Matching gh_wire_bob(const PipeNetwork& net, const BobSymbols& symbols) {
    if (symbols.adds.size() != net.layer_count) throw InputError("gh: one symbol per layer");
    const uint64_t q = net.modulus;
    if (symbols.start_state >= q) throw InputError("gh: start state out of range");
    for (auto [a, b] : symbols.adds)
        if (a >= q || b >= q) throw InputError("gh: layer constant out of range");
    const uint32_t qq = static_cast<uint32_t>(q);
    Matching m;
    for (uint32_t l = 1; l <= net.layer_count; ++l) {
        auto [a, b] = symbols.adds[l - 1];
        // Start offset rides on the first layer; there is no interface rank 1.
        uint64_t base = l == 1 ? symbols.start_state : 0;
        for (uint32_t branch = 0; branch < 2; ++branch) {
            uint64_t add = mod_add(base, branch ? b : a, q);
            for (uint32_t j = 0; j < qq; ++j) {
                uint32_t target_state = static_cast<uint32_t>(mod_add(j, add, q));
                uint32_t target = l == net.layer_count
                                      ? net.exit_pipe(target_state, branch)
                                      : net.interface_pipe(l + 1, target_state, branch);
                m.add(end_id(net.bundle_pipe(l, j, branch), Side::B), end_id(target, Side::B));
            }
        }
    }
    m.canonicalize();
    return m;
}

WaterTrace gh_flow(const PipeNetwork& net, const Matching& alice, const Matching& bob) {
    const size_t ends = 2 * net.pipes.size();
    std::vector<int64_t> partner(ends, -1);
    auto register_pairs = [&](const Matching& m) {
        for (auto [a, b] : m.pairs) {
            if (a >= ends || b >= ends || a == b) throw FlowError("gh: matching end out of range");
            if (partner[a] != -1 || partner[b] != -1) throw FlowError("gh: end used twice");
            partner[a] = b;
            partner[b] = a;
        }
    };
    register_pairs(alice);
    register_pairs(bob);

    WaterTrace tr;
    std::vector<uint8_t> seen(ends, 0);
    uint32_t enter = net.entry_end();
    for (;;) {
        if (seen[enter]) throw FlowError("gh: water path cycles");
        seen[enter] = 1;
        tr.visited_ends.push_back(enter);
        uint32_t out = enter ^ 1u;  // other end of the same pipe
        if (seen[out]) throw FlowError("gh: water path cycles");
        seen[out] = 1;
        tr.visited_ends.push_back(out);
        if (net.is_decorated(end_pipe(out))) ++tr.traversed_decorations;
        if (partner[out] < 0) {
            tr.exit_end = out;
            break;
        }
        enter = static_cast<uint32_t>(partner[out]);
    }
    const Pipe& exit = net.pipes[end_pipe(tr.exit_end)];
    tr.exit_pipe = exit.id;
    tr.exit_state = exit.state_index;
    tr.exit_lane = exit.lane;
    tr.output = (exit.role == PipeRole::Exit && net.accepts(exit.state_index)) ? 1 : 0;
    return tr;
}

std::string gh_to_dot(const PipeNetwork& net, const Matching* alice, const Matching* bob) {
    std::ostringstream os;
    os << "graph pipes {\n  node [shape=point];\n";
    auto ename = [](uint32_t end) {
        return "e" + std::to_string(end_pipe(end)) + (end_side(end) == Side::A ? "A" : "B");
    };
    for (const auto& p : net.pipes) {
        os << "  " << ename(end_id(p.id, Side::A)) << " -- " << ename(end_id(p.id, Side::B))
           << " [color=black";
        if (net.is_decorated(p.id)) os << ", penwidth=3, label=\"Pdg\"";
        os << "];\n";
    }
    auto emit = [&](const Matching& m, const char* color) {
        for (auto [a, b] : m.pairs)
            os << "  " << ename(a) << " -- " << ename(b) << " [color=" << color << "];\n";
    };
    if (alice) emit(*alice, "crimson");
    if (bob) emit(*bob, "steelblue");
    os << "}\n";
    return os.str();
}

}  // namespace qfhe
