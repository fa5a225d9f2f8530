#pragma once

#include "coexsim/dcf.hpp"
#include "coexsim/lteu.hpp"
#include "coexsim/medium.hpp"
#include "coexsim/traffic.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coexsim {

/// Bad scenario document. `path` is the dotted field path (e.g.
/// `lteu[0].cell_id`); `line` is 1-based, 0 when unknown.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string path, std::size_t line, const std::string& message);

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

struct WifiNodeSpec {
    NodeId id = 0;
    std::string name;
    DcfParams dcf;
    TrafficModel traffic;
    NodeId dest = kBroadcast;
    std::vector<std::int64_t> forced_draws;
};

struct LteuCellSpec {
    NodeId id = 0;
    std::string name;
    LteuParams params;
    bool seed_given = false;
    TrafficModel traffic;
    std::vector<std::int64_t> forced_draws;
};

struct ScriptedBurst {
    SimTime start;
    SimTime length;
    BurstKind kind = BurstKind::WifiData;
    std::optional<SimTime> duration_field;
    std::int64_t payload_bits = 0;
    NodeId intended_rx = kBroadcast;
};

/// A node that plays a fixed list of bursts regardless of channel state.
struct InterfererSpec {
    NodeId id = 0;
    std::string name;
    std::vector<ScriptedBurst> bursts;
};

struct OutputOptions {
    std::optional<std::string> trace_path;
    std::optional<std::string> summary_path;
    bool check_compliance = false;
};

struct Scenario {
    std::string name;
    std::string description;
    SimTime horizon{0};
    std::uint64_t seed = 0;
    Topology topology;
    std::vector<WifiNodeSpec> wifi;
    std::vector<LteuCellSpec> lteu;
    std::vector<InterfererSpec> interferers;
    OutputOptions output;

    std::size_t node_count() const { return wifi.size() + lteu.size() + interferers.size(); }
};

/// Parses "250", "250ns", "34us", "0.5ms", "1s". Bare integers are nanoseconds.
/// Fractions must resolve to whole nanoseconds.
std::optional<SimTime> parse_duration(std::string_view text);

Scenario parse_scenario(std::string_view yaml_text, const std::string& source = "<string>");
Scenario load_scenario(const std::string& path);

std::vector<std::string> builtin_scenario_names();
/// Raw document of a shipped scenario, or nullopt for an unknown name.
std::optional<std::string_view> builtin_scenario_text(std::string_view name);
/// Throws ScenarioError for an unknown name.
Scenario load_builtin(std::string_view name);

/// Loads `ref` as a file if one exists at that path, otherwise as a built-in name.
Scenario resolve_scenario(const std::string& ref);

}  // namespace coexsim
