#pragma once

#include <cstdint>
#include <vector>

#include "qfhe/garden_hose.hpp"

namespace qfhe {

// Measurement graph over pipe ends: one degree-1 edge per pipe. Inputs hold
// the faucet end, outputs the open exit-rank ends.
struct MeasurementGraph {
    uint32_t pipe_count = 0;
    std::vector<uint32_t> inputs;   // end ids
    std::vector<uint32_t> outputs;  // end ids, sorted

    uint32_t vertex_count() const { return 2 * pipe_count; }
    uint32_t edge_count() const { return pipe_count; }
};

MeasurementGraph build_measurement_graph(const PipeNetwork& net);

// Propagation order over ends. Water enters each pipe on its role-defined
// in side, so f maps a pipe's in end to its out end and a matched out end to
// the in end it is junctioned with. Terminal ends (unmatched out ends, the
// exits among them) have no successor.
struct FlowFunction {
    std::vector<int64_t> next;  // per end id; -1 = outside the domain

    bool defined(uint32_t end) const { return next[end] >= 0; }
    // Iterate from an end until the flow runs out.
    std::vector<uint32_t> follow(uint32_t start) const;
};

FlowFunction build_flow(const PipeNetwork& net, const MeasurementGraph& graph,
                        const Matching& alice, const Matching& bob);

struct ScheduledMeasurement {
    uint32_t id = 0;
    uint32_t end_a = 0;
    uint32_t end_b = 0;      // kDataEnd for the injection measurement
    uint32_t round = 0;
    static constexpr uint32_t kDataEnd = 0xffffffffu;
};

enum class RoundStage : uint8_t { Inject, Alice, Bob };

struct ScheduleRound {
    RoundStage stage = RoundStage::Inject;
    uint32_t layer = 0;  // 0 for injection
    bool precomputed = false;
    std::vector<uint32_t> measurement_ids;
};

// Layered adaptive schedule: one injection round, then an Alice stage (all of
// it precomputed at key generation) and a Bob stage per layer. Depth is
// exactly 2*L + 1; a round never exceeds the per-layer pipe count (2q).
struct Schedule {
    std::vector<ScheduledMeasurement> measurements;
    std::vector<ScheduleRound> rounds;
    // Round-level dependency DAG: measurements of round r depend on r-1.
    std::vector<std::pair<uint32_t, uint32_t>> dag_edges;
};

Schedule build_schedule(const PipeNetwork& net, const Matching& alice, const Matching& bob);

// Throws ScheduleError when the dependency edges contain a cycle or a
// measurement references an undefined round.
void validate_schedule(const Schedule& s);

}  // namespace qfhe
