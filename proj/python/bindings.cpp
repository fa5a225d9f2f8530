#include "coexsim/lteu.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/scenario.hpp"
#include "coexsim/simulation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace coexsim;

namespace {

Scenario scenario_from(const std::string& name_or_path) {
    return resolve_scenario(name_or_path);
}

py::dict run(const std::string& scenario, std::optional<std::uint64_t> seed, std::optional<std::int64_t> horizon_ns) {
    RunOptions o;
    o.seed = seed;
    if (horizon_ns) {
        o.horizon = SimTime{*horizon_ns};
    }
    RunResult r;
    {
        py::gil_scoped_release release;
        r = run_scenario(scenario_from(scenario), o);
    }
    py::dict out;
    out["summary"] = summary_json(r).dump();
    out["trace"] = r.trace_text;
    out["event_digest"] = r.event_digest;
    out["events_fired"] = r.events_fired;
    return out;
}

py::dict layout(std::int64_t success_ns, int data_subframes) {
    static const FrameGrid grid;
    const auto p = build_preamble(SimTime{success_ns}, grid, data_subframes);
    py::list crs;
    for (const auto& s : p.crs_symbols) {
        crs.append(py::make_tuple(s.begin.ns, s.end.ns));
    }
    py::dict d;
    d["cts_start"] = p.cts_start.ns;
    d["cts_end"] = p.cts_end.ns;
    d["upbch_start"] = p.upbch_start.ns;
    d["upbch_end"] = p.upbch_end.ns;
    d["crs_symbols"] = crs;
    d["data_start"] = p.burst_data_start.ns;
    d["end"] = p.burst_end.ns;
    d["duration_field"] = p.duration_field.ns;
    d["data_slots"] = p.data_slots;
    d["secured_subframe"] = p.secured_subframe;
    d["slot_aligned"] = p.slot_aligned;
    return d;
}

py::dict audit(const std::string& trace_text) {
    const auto records = parse_trace(trace_text);
    const auto rep = audit_compliance(records);
    py::dict d;
    d["pass"] = rep.pass;
    d["violations"] = rep.violations;
    py::list bursts;
    for (const auto& b : rep.bursts) {
        py::dict x;
        x["node"] = b.node;
        x["start"] = b.start.ns;
        x["end"] = b.end.ns;
        x["occupancy"] = b.occupancy.ns;
        x["pass_cap"] = b.pass_cap;
        bursts.append(x);
    }
    d["bursts"] = bursts;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-event Wi-Fi / LTE-u coexistence simulator";

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<TraceError>(m, "TraceError", PyExc_ValueError);
    py::register_exception<LbtError>(m, "LbtError", PyExc_ValueError);

    m.def("run_scenario", &run, py::arg("scenario"), py::arg("seed") = py::none(), py::arg("horizon_ns") = py::none(),
          "Run a built-in scenario name or YAML path. Returns summary (JSON text), trace, event_digest, events_fired.");
    m.def("build_preamble", &layout, py::arg("success_ns"), py::arg("data_subframes") = 9);
    m.def(
        "lbt_window_start",
        [](int sf, std::int64_t cca_ns, std::int64_t frame_start_ns) {
            static const FrameGrid grid;
            return lbt_window_start(grid, sf, SimTime{cca_ns}, SimTime{frame_start_ns}).ns;
        },
        py::arg("lbt_subframe"), py::arg("cca_ns") = 25'000, py::arg("frame_start_ns") = 0);
    m.def("jain_index", [](const std::vector<double>& x) { return jain_index(x); }, py::arg("shares"));
    m.def("audit_trace", &audit, py::arg("trace_text"));
    m.def("builtin_scenarios", &builtin_scenario_names);
    m.def("replay_golden", [](const std::string& name, const std::string& dir) {
        const auto g = replay_golden(name, dir);
        py::dict d;
        d["pass"] = g.pass;
        d["line"] = g.diff ? py::cast(g.diff->line) : py::none();
        return d;
    });
    m.def(
        "countdown_draws",
        [](std::uint64_t seed, std::int64_t cell_id, std::int64_t cw, std::size_t n) {
            CountdownSource src(seed, cell_id);
            std::vector<std::int64_t> out(n);
            for (auto& v : out) {
                v = src.draw_countdown(cw);
            }
            return out;
        },
        py::arg("seed"), py::arg("cell_id"), py::arg("cw") = 32, py::arg("n") = 1);

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>())
        .def("next", &SplitMix64::next);
}
