#pragma once

#include "coexsim/context.hpp"
#include "coexsim/trace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace coexsim {

/// Jain's fairness index (sum x)^2 / (n * sum x^2). Absent when no share is positive.
std::optional<double> jain_index(std::span<const double> shares);

struct NodeMetrics {
    NodeId node = 0;
    std::int64_t airtime_ns = 0;
    std::int64_t delivered_bits = 0;
    std::int64_t attempted_bursts = 0;
    std::int64_t collided_bursts = 0;
};

struct MetricsReport {
    SimTime horizon;
    std::vector<NodeMetrics> nodes;
    std::optional<double> jain_fairness;  // over airtime of the nodes listed in `contenders`
    std::int64_t total_bits = 0;
    double channel_busy_fraction = 0.0;
};

/// Length of the union of intervals clipped to [0, horizon).
SimTime union_length(std::vector<Interval> spans, SimTime horizon);

/// Airtime and delivery statistics from finished bursts. `contenders` selects
/// the nodes whose airtime shares enter the fairness index.
MetricsReport summarize(std::span<const BurstOutcome> bursts, std::size_t n_nodes, SimTime horizon,
                        std::span<const NodeId> contenders);

inline constexpr SimTime kMaxOccupancyCap{9'500'000};
inline constexpr SimTime kMinOccupancy{1'000'000};
inline constexpr SimTime kMaxOccupancy{10'000'000};
inline constexpr SimTime kMinCcaWindow{20'000};
/// 5% of the 9.5 ms cap.
inline constexpr SimTime kMinIdle{475'000};

struct BurstAudit {
    NodeId node = 0;
    SimTime start;
    SimTime end;
    SimTime occupancy;
    bool pass_occupancy_range = false;  // within [1 ms, 10 ms]
    bool pass_cap = false;              // at most 9.5 ms
};

struct CellAudit {
    NodeId node = 0;
    std::int64_t bursts = 0;
    std::optional<SimTime> min_inter_burst_idle;
    bool pass_idle_5pct = true;          // every gap >= 5% of the 9.5 ms cap
    bool pass_idle_per_burst = true;     // every gap >= 5% of the preceding burst
    std::optional<SimTime> min_cca_window;
    std::int64_t cca_windows = 0;
    bool pass_cca_min = true;
    bool pass_reserved_slot = true;      // no own transmission inside a reserved idle slot
};

struct ComplianceReport {
    std::vector<BurstAudit> bursts;
    std::vector<CellAudit> cells;
    bool pass = true;
    std::int64_t violations = 0;
};

/// Independent regulatory audit of LTE-u bursts reconstructed from trace
/// records (`preamble`, `cca`, `lbt_start`, `tx_start`).
ComplianceReport audit_compliance(std::span<const TraceRecord> trace);

}  // namespace coexsim
