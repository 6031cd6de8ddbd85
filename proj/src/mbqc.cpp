#include "qfhe/mbqc.hpp"

#include <algorithm>

namespace qfhe {

MeasurementGraph build_measurement_graph(const PipeNetwork& net) {
    MeasurementGraph g;
    g.pipe_count = net.pipe_count();
    g.inputs = {net.entry_end()};
    for (const auto& p : net.pipes)
        if (p.role == PipeRole::Exit) g.outputs.push_back(end_id(p.id, Side::A));
    std::sort(g.outputs.begin(), g.outputs.end());
    return g;
}

std::vector<uint32_t> FlowFunction::follow(uint32_t start) const {
    std::vector<uint32_t> seq{start};
    uint32_t v = start;
    while (defined(v)) {
        v = static_cast<uint32_t>(next[v]);
        if (seq.size() > next.size()) throw FlowError("flow: iteration does not terminate");
        seq.push_back(v);
    }
    return seq;
}

FlowFunction build_flow(const PipeNetwork& net, const MeasurementGraph& graph,
                        const Matching& alice, const Matching& bob) {
    FlowFunction f;
    f.next.assign(graph.vertex_count(), -1);
    for (const auto& p : net.pipes) {
        Side in = net.in_side(p.id);
        f.next[end_id(p.id, in)] = end_id(p.id, in == Side::A ? Side::B : Side::A);
    }
    auto wire = [&](const Matching& m) {
        for (auto [a, b] : m.pairs) {
            // A junction joins the out end of one pipe to the in end of the
            // next; anything else is inconsistent wiring.
            Side sa = end_side(a), sb = end_side(b);
            bool a_out = net.in_side(end_pipe(a)) != sa;
            bool b_out = net.in_side(end_pipe(b)) != sb;
            if (a_out == b_out) throw FlowError("flow: junction does not join out to in");
            uint32_t out = a_out ? a : b;
            uint32_t in = a_out ? b : a;
            if (f.next[out] != -1 && f.next[out] != in)
                throw FlowError("flow: end wired twice");
            f.next[out] = in;
        }
    };
    wire(alice);
    wire(bob);
    // Injectivity over the domain.
    std::vector<uint8_t> hit(graph.vertex_count(), 0);
    for (int64_t t : f.next) {
        if (t < 0) continue;
        if (hit[static_cast<size_t>(t)]) throw FlowError("flow: mapping not injective");
        hit[static_cast<size_t>(t)] = 1;
    }
    return f;
}

Schedule build_schedule(const PipeNetwork& net, const Matching& alice, const Matching& bob) {
    Schedule s;
    const uint32_t layers = net.layer_count;
    s.rounds.resize(2 * layers + 1);
    s.rounds[0] = {RoundStage::Inject, 0, false, {}};
    for (uint32_t l = 1; l <= layers; ++l) {
        s.rounds[2 * l - 1] = {RoundStage::Alice, l, true, {}};
        s.rounds[2 * l] = {RoundStage::Bob, l, false, {}};
    }

    auto add = [&](uint32_t ea, uint32_t eb, uint32_t round) {
        uint32_t id = static_cast<uint32_t>(s.measurements.size());
        s.measurements.push_back({id, ea, eb, round});
        s.rounds[round].measurement_ids.push_back(id);
    };
    add(net.entry_end(), ScheduledMeasurement::kDataEnd, 0);

    // A junction belongs to the layer of its bundle pipe; Alice selects into a
    // layer's bundles, Bob drains them.
    auto bundle_layer = [&](uint32_t a, uint32_t b) {
        for (uint32_t e : {a, b}) {
            const Pipe& p = net.pipes[end_pipe(e)];
            if (p.role == PipeRole::Bundle0 || p.role == PipeRole::Bundle1) return p.layer;
        }
        throw ScheduleError("schedule: junction touches no bundle pipe");
    };
    for (auto [a, b] : alice.pairs) add(a, b, 2 * bundle_layer(a, b) - 1);
    for (auto [a, b] : bob.pairs) add(a, b, 2 * bundle_layer(a, b));

    for (uint32_t r = 1; r < s.rounds.size(); ++r) s.dag_edges.emplace_back(r - 1, r);
    validate_schedule(s);
    return s;
}

void validate_schedule(const Schedule& s) {
    const uint32_t n = static_cast<uint32_t>(s.rounds.size());
    for (const auto& m : s.measurements)
        if (m.round >= n) throw ScheduleError("schedule: measurement in undefined round");
    // Kahn toposort over round dependencies.
    std::vector<uint32_t> indeg(n, 0);
    std::vector<std::vector<uint32_t>> adj(n);
    for (auto [u, v] : s.dag_edges) {
        if (u >= n || v >= n) throw ScheduleError("schedule: dependency on undefined round");
        adj[u].push_back(v);
        ++indeg[v];
    }
    std::vector<uint32_t> queue;
    for (uint32_t r = 0; r < n; ++r)
        if (indeg[r] == 0) queue.push_back(r);
    uint32_t seen = 0;
    while (!queue.empty()) {
        uint32_t u = queue.back();
        queue.pop_back();
        ++seen;
        for (uint32_t v : adj[u])
            if (--indeg[v] == 0) queue.push_back(v);
    }
    if (seen != n) throw ScheduleError("schedule: cyclic dependencies");
}

}  // namespace qfhe
