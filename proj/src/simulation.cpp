#include "coexsim/simulation.hpp"

#include "coexsim/dcf.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace coexsim {

ScriptedNode::ScriptedNode(SimContext& ctx, NodeId id, std::vector<ScriptedBurst> bursts)
    : Station(id), ctx_(ctx), bursts_(std::move(bursts)) {}

void ScriptedNode::start() {
    for (const auto& b : bursts_) {
        ctx_.engine().schedule(b.start, id(), EventKind::TxStart, [this, b](const Event& e) {
            Burst burst;
            burst.tx_node = id();
            burst.start = e.time;
            burst.end = e.time + b.length;
            burst.kind = b.kind;
            burst.duration_field = b.duration_field;
            burst.payload_bits = b.payload_bits;
            burst.intended_rx = b.intended_rx;
            ctx_.transmit(burst);
        });
    }
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
    const std::uint64_t seed = options.seed.value_or(scenario.seed);
    const SimTime horizon = options.horizon.value_or(scenario.horizon);
    if (horizon.ns <= 0) {
        throw std::invalid_argument("horizon must be positive");
    }

    SimContext ctx(scenario.topology);
    std::vector<std::unique_ptr<Station>> stations;
    std::vector<LbtCell*> cells;
    std::vector<NodeId> contenders;

    for (const auto& w : scenario.wifi) {
        auto node = std::make_unique<DcfNode>(ctx, w.id, w.dcf, w.traffic, w.dest,
                                              derive_seed(seed, 0x100 + static_cast<std::uint64_t>(w.id)));
        node->pin_draws(w.forced_draws);
        if (w.traffic.kind != TrafficKind::None) {
            contenders.push_back(w.id);
        }
        stations.push_back(std::move(node));
    }
    for (const auto& c : scenario.lteu) {
        LteuParams p = c.params;
        if (!c.seed_given) {
            p.seed = seed;
        }
        auto cell = std::make_unique<LbtCell>(ctx, c.id, p, c.traffic,
                                              derive_seed(seed, 0x200 + static_cast<std::uint64_t>(c.id)));
        cell->pin_draws(c.forced_draws);
        if (c.traffic.kind != TrafficKind::None) {
            contenders.push_back(c.id);
        }
        cells.push_back(cell.get());
        stations.push_back(std::move(cell));
    }
    for (const auto& x : scenario.interferers) {
        stations.push_back(std::make_unique<ScriptedNode>(ctx, x.id, x.bursts));
    }
    std::sort(contenders.begin(), contenders.end());

    for (auto& s : stations) {
        ctx.attach(*s);
    }
    for (auto& s : stations) {
        s->start();
    }
    ctx.engine().run_until(horizon);

    RunResult r;
    r.scenario = scenario.name;
    r.seed = seed;
    r.horizon = horizon;
    r.trace = ctx.trace().records();
    r.trace_text = ctx.trace().text();
    r.event_digest = ctx.engine().trace_digest();
    r.events_fired = ctx.engine().fired_count();
    r.bursts = ctx.outcomes();
    for (const auto* cell : cells) {
        r.layouts[cell->id()] = cell->layouts();
    }
    r.metrics = summarize(r.bursts, scenario.node_count(), horizon, contenders);
    r.compliance = audit_compliance(r.trace);
    return r;
}

namespace {

nlohmann::json optional_ns(const std::optional<SimTime>& t) {
    return t ? nlohmann::json(t->ns) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json summary_json(const RunResult& r) {
    nlohmann::json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["horizon_ns"] = r.horizon.ns;
    j["events_fired"] = r.events_fired;
    j["event_digest"] = r.event_digest;
    j["trace_fnv1a64"] = fnv1a64(r.trace_text);

    auto& m = j["metrics"];
    m["nodes"] = nlohmann::json::array();
    for (const auto& n : r.metrics.nodes) {
        m["nodes"].push_back({{"node", n.node},
                              {"airtime_ns", n.airtime_ns},
                              {"delivered_bits", n.delivered_bits},
                              {"attempted_bursts", n.attempted_bursts},
                              {"collided_bursts", n.collided_bursts}});
    }
    m["jain_fairness"] = r.metrics.jain_fairness ? nlohmann::json(*r.metrics.jain_fairness) : nlohmann::json(nullptr);
    m["total_bits"] = r.metrics.total_bits;
    m["channel_busy_fraction"] = r.metrics.channel_busy_fraction;

    auto& c = j["compliance"];
    c["pass"] = r.compliance.pass;
    c["violations"] = r.compliance.violations;
    c["bursts"] = nlohmann::json::array();
    for (const auto& b : r.compliance.bursts) {
        c["bursts"].push_back({{"node", b.node},
                               {"start_ns", b.start.ns},
                               {"end_ns", b.end.ns},
                               {"occupancy_ns", b.occupancy.ns},
                               {"pass_occupancy_range", b.pass_occupancy_range},
                               {"pass_cap", b.pass_cap}});
    }
    c["cells"] = nlohmann::json::array();
    for (const auto& cell : r.compliance.cells) {
        c["cells"].push_back({{"node", cell.node},
                              {"bursts", cell.bursts},
                              {"min_inter_burst_idle_ns", optional_ns(cell.min_inter_burst_idle)},
                              {"pass_idle_5pct", cell.pass_idle_5pct},
                              {"pass_idle_per_burst", cell.pass_idle_per_burst},
                              {"min_cca_window_ns", optional_ns(cell.min_cca_window)},
                              {"cca_windows", cell.cca_windows},
                              {"pass_cca_min", cell.pass_cca_min},
                              {"pass_reserved_slot", cell.pass_reserved_slot}});
    }
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

GoldenResult replay_golden(const std::string& name, const std::string& golden_dir) {
    const Scenario s = load_builtin(name);
    GoldenResult g;
    g.golden_path = (std::filesystem::path(golden_dir) / (name + ".trace")).string();
    std::ifstream in(g.golden_path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("golden trace not found: " + g.golden_path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const RunResult r = run_scenario(s);
    g.diff = diff_traces(ss.str(), r.trace_text);
    g.pass = !g.diff.has_value();
    return g;
}

}  // namespace coexsim
