#include "qfhe/branching_program.hpp"

#include <algorithm>
#include <sstream>

#include "qfhe/modmath.hpp"

namespace qfhe {

bool LayeredBp::accepts(uint32_t state) const {
    return std::binary_search(accept_sorted.begin(), accept_sorted.end(), state);
}

LayeredBp bp_from_ma(const MaProgram& prog, std::span<const Reader> reader_tags) {
    if (reader_tags.size() != prog.instructions.size())
        throw InputError("bp: one reader tag per instruction required");
    LayeredBp bp;
    bp.start_state = static_cast<uint32_t>(prog.start_state);
    bp.input_arity = prog.input_arity;
    bp.accept_sorted.assign(prog.accept_sorted.begin(), prog.accept_sorted.end());
    const uint32_t m = static_cast<uint32_t>(prog.modulus);
    bp.layers.reserve(prog.instructions.size());
    for (size_t l = 0; l < prog.instructions.size(); ++l) {
        const auto& ins = prog.instructions[l];
        BpLayer layer;
        layer.var_index = ins.var_index;
        layer.state_count = m;
        layer.reader = reader_tags[l];
        layer.map0.resize(m);
        layer.map1.resize(m);
        for (uint32_t s = 0; s < m; ++s) {
            layer.map0[s] = static_cast<uint32_t>(mod_add(s, ins.add0, m));
            layer.map1[s] = static_cast<uint32_t>(mod_add(s, ins.add1, m));
        }
        bp.layers.push_back(std::move(layer));
    }
    return bp;
}

LayeredBp bp_to_bit_level(const LayeredBp& bp) {
    if (bp.layers.empty()) return bp;
    const uint32_t m = bp.layers.front().state_count;
    for (const auto& l : bp.layers)
        if (l.state_count != m) throw InputError("bp: bit-level conversion expects uniform width");
    auto consts = bp_add_constants(bp);

    const uint32_t w = std::max<uint32_t>(1, ceil_log2(m));
    const uint32_t full = 1u << w;
    LayeredBp out;
    out.start_state = bp.start_state;
    out.input_arity = bp.input_arity;
    out.accept_sorted = bp.accept_sorted;
    out.layers.reserve(bp.layers.size() * w);
    for (size_t l = 0; l < bp.layers.size(); ++l) {
        auto [a, b] = consts[l];
        for (uint32_t t = 0; t < w; ++t) {
            uint64_t a_t = ((a >> t) & 1) ? (1ull << t) % m : 0;
            uint64_t b_t = ((b >> t) & 1) ? (1ull << t) % m : 0;
            BpLayer sub;
            sub.var_index = bp.layers[l].var_index;
            sub.state_count = full;
            sub.reader = bp.layers[l].reader;
            sub.map0.resize(full);
            sub.map1.resize(full);
            for (uint32_t s = 0; s < full; ++s) {
                if (s < m) {
                    sub.map0[s] = static_cast<uint32_t>(mod_add(s, a_t, m));
                    sub.map1[s] = static_cast<uint32_t>(mod_add(s, b_t, m));
                } else {
                    sub.map0[s] = s;
                    sub.map1[s] = s;
                }
            }
            out.layers.push_back(std::move(sub));
        }
    }
    return out;
}

BpEval bp_evaluate(const LayeredBp& bp, std::span<const uint8_t> x) {
    if (x.size() != bp.input_arity) throw InputError("bp: input arity mismatch");
    BpEval ev;
    ev.path.reserve(bp.layers.size() + 1);
    uint32_t s = bp.start_state;
    ev.path.push_back(s);
    for (const auto& layer : bp.layers) {
        s = x[layer.var_index - 1] ? layer.map1[s] : layer.map0[s];
        ev.path.push_back(s);
    }
    ev.output = bp.accepts(s) ? 1 : 0;
    return ev;
}

BpMetrics bp_metrics(const LayeredBp& bp) {
    BpMetrics m;
    m.length = static_cast<uint32_t>(bp.layers.size());
    for (const auto& l : bp.layers) m.width_states = std::max(m.width_states, l.state_count);
    m.width_bits = ceil_log2(m.width_states);
    return m;
}

bool bp_maps_are_permutations(const LayeredBp& bp) {
    for (const auto& layer : bp.layers) {
        for (const auto* map : {&layer.map0, &layer.map1}) {
            std::vector<uint8_t> seen(layer.state_count, 0);
            for (uint32_t t : *map) {
                if (t >= layer.state_count || seen[t]) return false;
                seen[t] = 1;
            }
        }
    }
    return true;
}

std::vector<std::pair<uint64_t, uint64_t>> bp_add_constants(const LayeredBp& bp) {
    std::vector<std::pair<uint64_t, uint64_t>> out;
    out.reserve(bp.layers.size());
    for (const auto& layer : bp.layers) {
        const uint32_t m = layer.state_count;
        if (m == 0) throw InputError("bp: empty layer");
        uint64_t a = layer.map0[0], b = layer.map1[0];
        for (uint32_t s = 0; s < m; ++s) {
            if (layer.map0[s] != mod_add(s, a, m) || layer.map1[s] != mod_add(s, b, m))
                throw InputError("bp: layer maps are not add-constant permutations");
        }
        out.emplace_back(a, b);
    }
    return out;
}

std::string bp_to_dot(const LayeredBp& bp) {
    std::ostringstream os;
    os << "digraph bp {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n";
    auto node = [](size_t layer, uint32_t state) {
        return "L" + std::to_string(layer) + "_S" + std::to_string(state);
    };
    for (size_t l = 0; l <= bp.layers.size(); ++l) {
        uint32_t count = l < bp.layers.size() ? bp.layers[l].state_count
                                              : bp.layers.back().state_count;
        os << "  subgraph cluster_" << l << " {\n    label=\"" << (l == 0 ? "start" : "layer " + std::to_string(l))
           << "\";\n";
        for (uint32_t s = 0; s < count; ++s) {
            os << "    " << node(l, s);
            if (l == 0 && s == bp.start_state) os << " [style=bold]";
            if (l == bp.layers.size() && bp.accepts(s)) os << " [peripheries=2]";
            os << ";\n";
        }
        os << "  }\n";
    }
    for (size_t l = 0; l < bp.layers.size(); ++l) {
        const auto& layer = bp.layers[l];
        for (uint32_t s = 0; s < layer.state_count; ++s) {
            os << "  " << node(l, s) << " -> " << node(l + 1, layer.map0[s]) << " [label=\"x"
               << layer.var_index << "=0\", color=gray];\n";
            os << "  " << node(l, s) << " -> " << node(l + 1, layer.map1[s]) << " [label=\"x"
               << layer.var_index << "=1\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace qfhe
