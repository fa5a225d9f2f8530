// coexsim: run scenarios, replay golden traces and audit trace files.
//
// Exit status: 0 ok, 1 compliance failure or golden mismatch, 2 error.

#include "coexsim/simulation.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace coexsim;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

// run.trace -> run.seed7.trace
std::string with_seed(const std::string& path, std::uint64_t seed) {
    std::filesystem::path p(path);
    const auto stem = p.stem().string() + ".seed" + std::to_string(seed);
    return (p.parent_path() / (stem + p.extension().string())).string();
}

void print_brief(std::ostream& os, const RunResult& r) {
    os << r.scenario << " seed=" << r.seed << " horizon_ns=" << r.horizon.ns << " events=" << r.events_fired
              << " bursts=" << r.bursts.size() << " busy_fraction=" << r.metrics.channel_busy_fraction;
    if (r.metrics.jain_fairness) {
        os << " jain=" << *r.metrics.jain_fairness;
    }
    os << " compliance=" << (r.compliance.pass ? "pass" : "FAIL") << " violations=" << r.compliance.violations
              << '\n';
}

struct RunArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration_ms;
    std::string trace;
    std::string summary;
    bool check = false;
    unsigned replications = 1;
};

int cmd_run(const RunArgs& a) {
    Scenario s = resolve_scenario(a.scenario);
    RunOptions base;
    base.seed = a.seed;
    if (a.duration_ms) {
        if (!(*a.duration_ms > 0.0)) {
            throw std::invalid_argument("--duration-ms must be positive");
        }
        base.horizon = SimTime{static_cast<std::int64_t>(std::llround(*a.duration_ms * 1e6))};
    }
    const std::string trace_path = !a.trace.empty() ? a.trace : s.output.trace_path.value_or("");
    const std::string summary_path = !a.summary.empty() ? a.summary : s.output.summary_path.value_or("");
    const bool check = a.check || s.output.check_compliance;
    if (a.replications > 1 && trace_path == "-") {
        throw std::invalid_argument("--trace - needs a single replication");
    }

    const std::uint64_t first_seed = base.seed.value_or(s.seed);
    std::vector<RunResult> results(a.replications);
    std::vector<std::string> errors(a.replications);
    {
        // Each replication owns its whole simulation; nothing is shared.
        std::vector<std::thread> workers;
        const unsigned width = std::max(1u, std::min(a.replications, std::thread::hardware_concurrency()));
        std::atomic<unsigned> next{0};
        for (unsigned w = 0; w < width; ++w) {
            workers.emplace_back([&] {
                for (unsigned k = next++; k < a.replications; k = next++) {
                    RunOptions o = base;
                    o.seed = first_seed + k;
                    try {
                        results[k] = run_scenario(s, o);
                    } catch (const std::exception& e) {
                        errors[k] = e.what();
                    }
                }
            });
        }
        for (auto& t : workers) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) {
            throw std::runtime_error(e);
        }
    }

    bool all_pass = true;
    nlohmann::json summaries = nlohmann::json::array();
    // Keep stdout clean when it carries the trace or the summary.
    const bool to_stdout = trace_path == "-" || summary_path == "-";
    for (const auto& r : results) {
        print_brief(to_stdout ? std::cerr : std::cout, r);
        all_pass = all_pass && r.compliance.pass;
        if (trace_path == "-") {
            std::cout << r.trace_text;
        } else if (!trace_path.empty()) {
            write_file(a.replications > 1 ? with_seed(trace_path, r.seed) : trace_path, r.trace_text);
        }
        summaries.push_back(summary_json(r));
    }
    if (!summary_path.empty()) {
        const auto doc = a.replications > 1 ? nlohmann::json{{"replications", summaries}} : summaries.at(0);
        if (summary_path == "-") {
            std::cout << doc.dump(2) << '\n';
        } else {
            write_file(summary_path, doc.dump(2) + "\n");
        }
    }
    if (check && !all_pass) {
        std::cerr << "compliance audit failed\n";
        return kExitFail;
    }
    return kExitOk;
}

int cmd_replay(const std::string& name, const std::string& golden_dir, bool regenerate) {
    if (regenerate) {
        const RunResult r = run_scenario(load_builtin(name));
        const auto path = (std::filesystem::path(golden_dir) / (name + ".trace")).string();
        write_file(path, r.trace_text);
        std::cout << "wrote " << path << " (" << r.trace.size() << " records)\n";
        return kExitOk;
    }
    const GoldenResult g = replay_golden(name, golden_dir);
    if (g.pass) {
        std::cout << name << ": golden trace matches " << g.golden_path << '\n';
        return kExitOk;
    }
    std::cout << name << ": first difference at line " << g.diff->line << "\n  expected: " << g.diff->expected
              << "\n  actual:   " << g.diff->actual << '\n';
    return kExitFail;
}

int cmd_audit(const std::string& trace_path, const std::string& summary_path) {
    const auto records = read_trace_file(trace_path);
    const ComplianceReport rep = audit_compliance(records);
    for (const auto& c : rep.cells) {
        std::cout << "cell node=" << c.node << " bursts=" << c.bursts
                  << " min_idle_ns=" << (c.min_inter_burst_idle ? std::to_string(c.min_inter_burst_idle->ns) : "-")
                  << " min_cca_ns=" << (c.min_cca_window ? std::to_string(c.min_cca_window->ns) : "-")
                  << " idle=" << (c.pass_idle_5pct ? "pass" : "FAIL") << " cca=" << (c.pass_cca_min ? "pass" : "FAIL")
                  << " reserved_slot=" << (c.pass_reserved_slot ? "pass" : "FAIL") << '\n';
    }
    for (const auto& b : rep.bursts) {
        if (!b.pass_cap || !b.pass_occupancy_range) {
            std::cout << "burst node=" << b.node << " start=" << b.start.ns << " occupancy_ns=" << b.occupancy.ns
                      << " FAIL\n";
        }
    }
    std::cout << "compliance=" << (rep.pass ? "pass" : "FAIL") << " violations=" << rep.violations << '\n';
    if (!summary_path.empty()) {
        RunResult r;
        r.scenario = trace_path;
        r.compliance = rep;
        write_file(summary_path, summary_json(r)["compliance"].dump(2) + "\n");
    }
    return rep.pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator of Wi-Fi DCF and frame-based LTE-u sharing one channel"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or built-in scenario");
    run_cmd->add_option("--scenario", run.scenario, "Scenario file or built-in name")->required();
    run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
    run_cmd->add_option("--duration-ms", run.duration_ms, "Override the horizon (milliseconds)");
    run_cmd->add_option("--trace", run.trace, "Write the event trace here ('-' for stdout)");
    run_cmd->add_option("--summary", run.summary, "Write the JSON summary here ('-' for stdout)");
    run_cmd->add_flag("--check-compliance", run.check, "Exit 1 if the compliance audit fails");
    run_cmd->add_option("--replications", run.replications, "Independent runs with seeds seed..seed+N-1")
        ->check(CLI::Range(1u, 100000u));

    std::string replay_name;
    std::string golden_dir = "tests/golden";
    bool regenerate = false;
    auto* replay_cmd = app.add_subcommand("replay", "Regenerate a built-in scenario and diff it against its golden trace");
    replay_cmd->add_option("--scenario", replay_name, "Built-in scenario name")->required();
    replay_cmd->add_option("--golden-dir", golden_dir, "Directory holding <name>.trace");
    replay_cmd->add_flag("--regenerate", regenerate, "Overwrite the golden trace instead of comparing");

    std::string audit_trace;
    std::string audit_summary;
    auto* audit_cmd = app.add_subcommand("audit", "Audit a trace file against the occupancy, idle and CCA rules");
    audit_cmd->add_option("--trace", audit_trace, "Trace file")->required();
    audit_cmd->add_option("--summary", audit_summary, "Write the compliance report as JSON here");

    app.add_subcommand("list", "List built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        if (*run_cmd) {
            return cmd_run(run);
        }
        if (*replay_cmd) {
            return cmd_replay(replay_name, golden_dir, regenerate);
        }
        if (*audit_cmd) {
            return cmd_audit(audit_trace, audit_summary);
        }
        for (const auto& n : builtin_scenario_names()) {
            std::cout << n << '\n';
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
