#include "coexsim/scenario.hpp"
#include "coexsim/simulation.hpp"

#include "doctest.h"
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace coexsim;
using namespace coexsim::literals;

namespace {
ScenarioError error_of(std::string_view yaml) {
    try {
        parse_scenario(yaml, "t");
    } catch (const ScenarioError& e) {
        return e;
    }
    FAIL("scenario unexpectedly valid");
    return ScenarioError("", 0, "");
}

std::string read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("durations") {
    CHECK(parse_duration("25us") == 25_us);
    CHECK(parse_duration("0.5ms") == 500_us);
    CHECK(parse_duration("500000ns") == 500_us);
    CHECK(parse_duration("1s") == 1000_ms);
    CHECK(parse_duration("120") == 120_ns);
    CHECK(parse_duration(".25ms") == 250_us);
    CHECK_FALSE(parse_duration("1.5ns").has_value());
    CHECK_FALSE(parse_duration("3 ms").has_value());
    CHECK_FALSE(parse_duration("5min").has_value());
    CHECK_FALSE(parse_duration("ms").has_value());
}

TEST_CASE("every shipped scenario loads, and the files match the built-ins") {
    for (const auto& name : builtin_scenario_names()) {
        CAPTURE(name);
        const auto s = load_builtin(name);
        CHECK(s.name == name);
        CHECK(s.horizon.ns > 0);
        const auto file = std::string(COEXSIM_SCENARIO_DIR) + "/" + name + ".yaml";
        CHECK(read(file) == std::string(*builtin_scenario_text(name)));
        CHECK(load_scenario(file).node_count() == s.node_count());
    }
    CHECK_THROWS_AS(load_builtin("nope"), ScenarioError);
}

TEST_CASE("fig2 pins the backoff draws 14, 10 and 16") {
    const auto s = load_builtin("fig2");
    REQUIRE(s.wifi.size() == 3);
    CHECK(s.wifi[0].forced_draws == std::vector<std::int64_t>{14});
    CHECK(s.wifi[1].forced_draws == std::vector<std::int64_t>{10});
    CHECK(s.wifi[2].forced_draws == std::vector<std::int64_t>{16});
}

TEST_CASE("decode reach without energy reach is rejected") {
    const auto e = error_of(R"(
simulation: {horizon: 1ms}
topology:
  energy_reach: ["01", "00"]
  decode_reach: ["01", "10"]
wifi:
  - {id: 0}
  - {id: 1}
)");
    CHECK(e.path() == "topology.decode_reach[1][0]");
    CHECK(e.line() == 5);
}

TEST_CASE("a missing cell_id is named with its line") {
    const auto e = error_of(R"(simulation: {horizon: 1ms}
lteu:
  - id: 0
    lbt_subframe: 0
)");
    CHECK(e.path() == "lteu[0].cell_id");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("lteu[0].cell_id") != std::string::npos);
}

TEST_CASE("validation errors") {
    CHECK(error_of("wifi: []\n").path() == "simulation");
    CHECK(error_of("simulation: {horizon: 1ms}\nwifi: [{id: 0, dest: 3, traffic: {kind: full_buffer}}, {id: 1}]\n").path() ==
          "wifi[0].dest");
    CHECK(error_of("simulation: {horizon: 1ms}\nwifi: [{id: 0, traffic: {kind: full_buffer}}]\n").path() == "wifi[0].dest");
    CHECK(error_of("simulation: {horizon: 1ms}\nwifi: [{id: 0}, {id: 2}]\n").path() == "wifi[1].id");
    CHECK(error_of("simulation: {horizon: 1ms}\nwifi: [{id: 0}, {id: 0}]\n").path() == "wifi[1].id");
    CHECK(error_of("simulation: {horizon: 1ms, sed: 4}\nwifi: [{id: 0}]\n").path() == "simulation.sed");
    CHECK(error_of("simulation: {horizon: 1ms}\nlteu: [{id: 0, cell_id: 600}]\n").path() == "lteu[0].cell_id");
    CHECK(error_of("simulation: {horizon: 1ms}\nlteu: [{id: 0, cell_id: 1, cca: 10us}]\n").path() == "lteu[0]");
    CHECK(error_of("simulation: {horizon: 1ms}\nlteu: [{id: 0, cell_id: 1, forced_draws: [32]}]\n").path() ==
          "lteu[0].forced_draws[0]");
    CHECK(error_of("simulation: {horizon: 1ms}\nwifi: [{id: 0, dcf: {difs: 3xs}}]\n").path() == "wifi[0].dcf.difs");
    CHECK(error_of("simulation: {horizon: 1ms}\ninterferers: [{id: 0, bursts: [{start: 0us, length: 40us, kind: cts-to-self}]}]\n")
              .path() == "interferers[0].bursts[0].length");
    CHECK(error_of("simulation: {horizon: 1ms}\ninterferers: [{id: 0, bursts: [{start: 0us, length: 40us}, {start: 20us, length: 1us}]}]\n")
              .path() == "interferers[0].bursts[1].start");
    CHECK(error_of("simulation: {horizon: 1ms}\ntopology: {energy_reach: [\"0\"]}\nwifi: [{id: 0}, {id: 1}]\n").path() ==
          "topology.energy_reach");
    CHECK(error_of("simulation: [horizon\n").line() > 0);
}

TEST_CASE("golden traces replay") {
    for (const char* name : {"fig2", "fig5b", "fig5c", "fig6", "edge"}) {
        CAPTURE(name);
        const auto g = replay_golden(name, COEXSIM_GOLDEN_DIR);
        CHECK(g.pass);
    }
    CHECK_THROWS_AS(replay_golden("nope", COEXSIM_GOLDEN_DIR), ScenarioError);
}

TEST_CASE("a mutated DIFS diverges at the first transmission") {
    auto s = load_builtin("fig2");
    for (auto& w : s.wifi) {
        w.dcf.difs = 35_us;
    }
    const auto r = run_scenario(s);
    const auto golden = read(std::string(COEXSIM_GOLDEN_DIR) + "/fig2.trace");
    const auto d = diff_traces(golden, r.trace_text);
    REQUIRE(d.has_value());
    // Line 1 is C's arrival; line 2 is its first frame, one DIFS later.
    CHECK(d->line == 2);
    CHECK(d->expected.rfind("44000,2,tx_start,", 0) == 0);
    CHECK(d->actual.rfind("45000,2,tx_start,", 0) == 0);
}

TEST_CASE("seed override and determinism") {
    const auto s = load_builtin("mixed");
    RunOptions o;
    o.horizon = 200_ms;
    o.seed = 11;
    const auto a = run_scenario(s, o);
    const auto b = run_scenario(s, o);
    CHECK(a.trace_text == b.trace_text);
    CHECK(a.event_digest == b.event_digest);
    o.seed = 12;
    CHECK(run_scenario(s, o).trace_text != a.trace_text);
}

TEST_CASE("summary document") {
    const auto r = run_scenario(load_builtin("fig5b"));
    const auto j = summary_json(r);
    CHECK(j["compliance"]["pass"].get<bool>());
    CHECK(j["metrics"]["channel_busy_fraction"].get<double>() == doctest::Approx(0.95));
    CHECK(j["compliance"]["bursts"].size() == 10);
    CHECK(j["compliance"]["cells"][0]["min_cca_window_ns"].get<std::int64_t>() == 25'000);
    CHECK(j["trace_fnv1a64"].get<std::uint64_t>() == fnv1a64(r.trace_text));
}
