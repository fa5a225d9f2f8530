#pragma once

#include "coexsim/context.hpp"
#include "coexsim/lteu.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/scenario.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coexsim {

/// Plays a fixed list of bursts. Used for scripted interference.
class ScriptedNode : public Station {
public:
    ScriptedNode(SimContext& ctx, NodeId id, std::vector<ScriptedBurst> bursts);
    void start() override;

private:
    SimContext& ctx_;
    std::vector<ScriptedBurst> bursts_;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<SimTime> horizon;
};

struct RunResult {
    std::string scenario;
    std::uint64_t seed = 0;
    SimTime horizon{0};
    std::vector<TraceRecord> trace;
    std::string trace_text;
    std::uint64_t event_digest = 0;
    std::uint64_t events_fired = 0;
    std::vector<BurstOutcome> bursts;
    std::map<NodeId, std::vector<PreambleLayout>> layouts;
    MetricsReport metrics;
    ComplianceReport compliance;
};

/// Builds every station, runs to the horizon and post-processes the trace.
/// The scenario must already be validated (parse_scenario does that).
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Summary document: run identity, metrics and compliance.
nlohmann::json summary_json(const RunResult& result);

/// FNV-1a 64 of a byte string; used to fingerprint trace files.
std::uint64_t fnv1a64(std::string_view bytes);

struct GoldenResult {
    bool pass = false;
    std::optional<TraceDiff> diff;
    std::string golden_path;
};

/// Regenerates the built-in scenario `name` and compares its trace with
/// `<golden_dir>/<name>.trace`. Throws ScenarioError for an unknown name and
/// std::runtime_error if the golden file is missing.
GoldenResult replay_golden(const std::string& name, const std::string& golden_dir);

}  // namespace coexsim
