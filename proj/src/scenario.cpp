#include "coexsim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>

namespace coexsim {

namespace detail {
// Defined in the generated builtin_scenarios.cpp.
extern const std::vector<std::pair<std::string_view, std::string_view>>& builtin_scenarios();
}  // namespace detail

ScenarioError::ScenarioError(std::string path, std::size_t line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                         (path.empty() ? std::string{} : path + ": ") + message),
      path_(std::move(path)),
      line_(line) {}

std::optional<SimTime> parse_duration(std::string_view text) {
    std::size_t unit_pos = text.size();
    while (unit_pos > 0 && std::isalpha(static_cast<unsigned char>(text[unit_pos - 1]))) {
        --unit_pos;
    }
    const std::string_view number = text.substr(0, unit_pos);
    const std::string_view unit = text.substr(unit_pos);
    std::int64_t scale = 0;
    if (unit.empty() || unit == "ns") {
        scale = 1;
    } else if (unit == "us") {
        scale = 1'000;
    } else if (unit == "ms") {
        scale = 1'000'000;
    } else if (unit == "s") {
        scale = 1'000'000'000;
    } else {
        return std::nullopt;
    }
    const auto dot = number.find('.');
    const std::string_view whole = number.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : number.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
        return std::nullopt;
    }
    std::int64_t w = 0;
    if (!whole.empty()) {
        auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
        if (ec != std::errc{} || p != whole.data() + whole.size() || w < 0) {
            return std::nullopt;
        }
    }
    std::int64_t ns = w * scale;
    std::int64_t place = scale;
    for (char c : frac) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        const std::int64_t digit = c - '0';
        if (place % 10 != 0) {
            if (digit != 0) {
                return std::nullopt;  // finer than a nanosecond
            }
            continue;
        }
        place /= 10;
        ns += digit * place;
    }
    return SimTime{ns};
}

namespace {

std::size_t line_of(const YAML::Node& n) {
    const auto m = n.Mark();
    return m.is_null() ? 0 : static_cast<std::size_t>(m.line) + 1;
}

[[noreturn]] void fail(const std::string& path, const YAML::Node& at, const std::string& msg) {
    throw ScenarioError(path, line_of(at), msg);
}

void allow_keys(const YAML::Node& map, const std::string& path, std::initializer_list<std::string_view> keys) {
    if (!map.IsMap()) {
        fail(path, map, "expected a mapping");
    }
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            fail(path.empty() ? key : path + "." + key, kv.first, "unknown field");
        }
    }
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

YAML::Node require(const YAML::Node& map, const std::string& path, std::string_view key) {
    YAML::Node v = map[std::string(key)];
    if (!v) {
        fail(join(path, key), map, "required field is missing");
    }
    return v;
}

std::int64_t as_int(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) {
        fail(path, n, "expected an integer");
    }
    const auto s = n.Scalar();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        fail(path, n, "expected an integer, got '" + s + "'");
    }
    return v;
}

double as_double(const YAML::Node& n, const std::string& path) {
    try {
        return n.as<double>();
    } catch (const YAML::Exception&) {
        fail(path, n, "expected a number");
    }
}

bool as_bool(const YAML::Node& n, const std::string& path) {
    try {
        return n.as<bool>();
    } catch (const YAML::Exception&) {
        fail(path, n, "expected true or false");
    }
}

std::string as_string(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) {
        fail(path, n, "expected a string");
    }
    return n.Scalar();
}

SimTime as_duration(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) {
        fail(path, n, "expected a duration such as 25us or 0.5ms");
    }
    auto d = parse_duration(n.Scalar());
    if (!d) {
        fail(path, n, "bad duration '" + n.Scalar() + "'");
    }
    return *d;
}

std::vector<std::int64_t> as_int_list(const YAML::Node& n, const std::string& path) {
    if (!n.IsSequence()) {
        fail(path, n, "expected a list of integers");
    }
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        out.push_back(as_int(n[i], index(path, i)));
    }
    return out;
}

template <class F>
void optional_field(const YAML::Node& map, const std::string& path, std::string_view key, F&& apply) {
    if (YAML::Node v = map[std::string(key)]) {
        apply(v, join(path, key));
    }
}

TrafficModel parse_traffic(const YAML::Node& n, const std::string& path, TrafficKind default_kind) {
    TrafficModel m;
    m.kind = default_kind;
    if (!n) {
        return m;
    }
    allow_keys(n, path, {"kind", "rate", "arrivals", "payload_bits"});
    optional_field(n, path, "kind", [&](const YAML::Node& v, const std::string& p) {
        const auto k = as_string(v, p);
        if (k == "none") {
            m.kind = TrafficKind::None;
        } else if (k == "full_buffer") {
            m.kind = TrafficKind::FullBuffer;
        } else if (k == "poisson") {
            m.kind = TrafficKind::Poisson;
        } else if (k == "script") {
            m.kind = TrafficKind::Script;
        } else {
            fail(p, v, "unknown traffic kind '" + k + "' (none, full_buffer, poisson, script)");
        }
    });
    optional_field(n, path, "rate", [&](const YAML::Node& v, const std::string& p) { m.rate_frames_per_s = as_double(v, p); });
    optional_field(n, path, "payload_bits", [&](const YAML::Node& v, const std::string& p) {
        m.wifi_frame_payload_bits = as_int(v, p);
        if (m.wifi_frame_payload_bits <= 0) {
            fail(p, v, "must be positive");
        }
    });
    optional_field(n, path, "arrivals", [&](const YAML::Node& v, const std::string& p) {
        if (!v.IsSequence()) {
            fail(p, v, "expected a list of durations");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            m.arrivals.push_back(as_duration(v[i], index(p, i)));
            if (i > 0 && m.arrivals[i] < m.arrivals[i - 1]) {
                fail(index(p, i), v[i], "arrivals must be non-decreasing");
            }
        }
    });
    if (m.kind == TrafficKind::Poisson && !(m.rate_frames_per_s > 0.0)) {
        fail(join(path, "rate"), n, "poisson traffic needs a positive rate");
    }
    if (m.kind == TrafficKind::Script && m.arrivals.empty()) {
        fail(join(path, "arrivals"), n, "script traffic needs at least one arrival");
    }
    return m;
}

void parse_rate(const YAML::Node& v, const std::string& p, DcfParams& d) {
    const auto s = as_string(v, p);
    const auto slash = s.find('/');
    std::int64_t num = 0;
    std::int64_t den = 1;
    auto parse_part = [&](std::string_view part, std::int64_t& out) {
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc{} && ptr == part.data() + part.size() && out > 0;
    };
    const std::string_view sv{s};
    const bool ok = slash == std::string::npos
                        ? parse_part(sv, num)
                        : parse_part(sv.substr(0, slash), num) && parse_part(sv.substr(slash + 1), den);
    if (!ok) {
        fail(p, v, "expected a positive integer or ratio such as 54 or 65/2 (bits per microsecond)");
    }
    d.rate_bits_num = num;
    d.rate_bits_den = den;
}

DcfParams parse_dcf(const YAML::Node& n, const std::string& path) {
    DcfParams d;
    if (!n) {
        return d;
    }
    allow_keys(n, path, {"difs", "sifs", "slot", "cw", "ack", "rate_mbps", "cts_to_self"});
    optional_field(n, path, "difs", [&](const YAML::Node& v, const std::string& p) { d.difs = as_duration(v, p); });
    optional_field(n, path, "sifs", [&](const YAML::Node& v, const std::string& p) { d.sifs = as_duration(v, p); });
    optional_field(n, path, "slot", [&](const YAML::Node& v, const std::string& p) { d.backoff_slot = as_duration(v, p); });
    optional_field(n, path, "ack", [&](const YAML::Node& v, const std::string& p) { d.ack_len = as_duration(v, p); });
    optional_field(n, path, "cw", [&](const YAML::Node& v, const std::string& p) { d.cw_len = as_int(v, p); });
    optional_field(n, path, "cts_to_self", [&](const YAML::Node& v, const std::string& p) { d.use_cts_to_self = as_bool(v, p); });
    optional_field(n, path, "rate_mbps", [&](const YAML::Node& v, const std::string& p) { parse_rate(v, p, d); });
    try {
        d.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, n, e.what());
    }
    return d;
}

void parse_matrix(const YAML::Node& n, const std::string& path, std::size_t size,
                  const std::function<void(NodeId, NodeId, bool)>& set) {
    if (n.IsScalar()) {
        const auto s = n.Scalar();
        if (s != "full" && s != "none") {
            fail(path, n, "expected 'full', 'none' or a matrix");
        }
        for (std::size_t t = 0; t < size; ++t) {
            for (std::size_t r = 0; r < size; ++r) {
                set(static_cast<NodeId>(t), static_cast<NodeId>(r), s == "full" && t != r);
            }
        }
        return;
    }
    if (!n.IsSequence() || n.size() != size) {
        fail(path, n, "expected " + std::to_string(size) + " rows");
    }
    for (std::size_t t = 0; t < size; ++t) {
        const auto row_path = index(path, t);
        const YAML::Node row = n[t];
        std::vector<bool> cells;
        if (row.IsScalar()) {
            for (char c : row.Scalar()) {
                if (c != '0' && c != '1') {
                    fail(row_path, row, "row strings may contain only 0 and 1");
                }
                cells.push_back(c == '1');
            }
        } else if (row.IsSequence()) {
            for (std::size_t r = 0; r < row.size(); ++r) {
                const auto v = as_int(row[r], index(row_path, r));
                if (v != 0 && v != 1) {
                    fail(index(row_path, r), row[r], "expected 0 or 1");
                }
                cells.push_back(v == 1);
            }
        } else {
            fail(row_path, row, "expected a row");
        }
        if (cells.size() != size) {
            fail(row_path, row, "expected " + std::to_string(size) + " columns, got " + std::to_string(cells.size()));
        }
        for (std::size_t r = 0; r < size; ++r) {
            if (t == r && cells[r]) {
                fail(index(row_path, r), row, "diagonal must be 0");
            }
            set(static_cast<NodeId>(t), static_cast<NodeId>(r), cells[r]);
        }
    }
}

void parse_topology(const YAML::Node& n, Scenario& s) {
    const std::size_t size = s.node_count();
    Topology topo(size);
    if (!n) {
        s.topology = Topology::fully_connected(size);
        return;
    }
    allow_keys(n, "topology", {"energy_reach", "decode_reach"});
    const YAML::Node energy = n["energy_reach"];
    parse_matrix(energy ? energy : YAML::Node("full"), "topology.energy_reach", size,
                 [&](NodeId t, NodeId r, bool v) { topo.set_energy(t, r, v); });
    if (const YAML::Node decode = n["decode_reach"]) {
        parse_matrix(decode, "topology.decode_reach", size, [&](NodeId t, NodeId r, bool v) { topo.set_decode(t, r, v); });
        for (std::size_t t = 0; t < size; ++t) {
            for (std::size_t r = 0; r < size; ++r) {
                const auto a = static_cast<NodeId>(t);
                const auto b = static_cast<NodeId>(r);
                if (topo.decode(a, b) && !topo.energy(a, b)) {
                    fail("topology.decode_reach[" + std::to_string(t) + "][" + std::to_string(r) + "]", decode,
                         "decode reach requires energy reach for the same pair");
                }
            }
        }
    } else {
        for (std::size_t t = 0; t < size; ++t) {
            for (std::size_t r = 0; r < size; ++r) {
                topo.set_decode(static_cast<NodeId>(t), static_cast<NodeId>(r),
                                topo.energy(static_cast<NodeId>(t), static_cast<NodeId>(r)));
            }
        }
    }
    topo.validate();
    s.topology = std::move(topo);
}

NodeId parse_id(const YAML::Node& n, const std::string& path) {
    const auto v = as_int(require(n, path, "id"), join(path, "id"));
    if (v < 0) {
        fail(join(path, "id"), n["id"], "node ids must be non-negative");
    }
    return static_cast<NodeId>(v);
}

ScriptedBurst parse_scripted_burst(const YAML::Node& n, const std::string& path) {
    allow_keys(n, path, {"start", "length", "kind", "duration", "bits", "rx"});
    ScriptedBurst b;
    b.start = as_duration(require(n, path, "start"), join(path, "start"));
    b.length = as_duration(require(n, path, "length"), join(path, "length"));
    if (b.length.ns <= 0) {
        fail(join(path, "length"), n["length"], "must be positive");
    }
    optional_field(n, path, "kind", [&](const YAML::Node& v, const std::string& p) {
        auto k = parse_burst_kind(as_string(v, p));
        if (!k) {
            fail(p, v, "unknown burst kind '" + v.Scalar() + "'");
        }
        b.kind = *k;
    });
    optional_field(n, path, "duration", [&](const YAML::Node& v, const std::string& p) { b.duration_field = as_duration(v, p); });
    optional_field(n, path, "bits", [&](const YAML::Node& v, const std::string& p) { b.payload_bits = as_int(v, p); });
    optional_field(n, path, "rx", [&](const YAML::Node& v, const std::string& p) { b.intended_rx = static_cast<NodeId>(as_int(v, p)); });
    if (b.kind == BurstKind::CtsToSelf && b.length != kCtsToSelfLength) {
        fail(join(path, "length"), n, "cts-to-self bursts are exactly 44us long");
    }
    return b;
}

}  // namespace

Scenario parse_scenario(std::string_view yaml_text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(source, static_cast<std::size_t>(e.mark.line) + 1, e.msg);
    }
    if (!root.IsMap()) {
        throw ScenarioError(source, 1, "scenario document must be a mapping");
    }
    allow_keys(root, "", {"name", "description", "simulation", "topology", "wifi", "lteu", "interferers", "output"});

    Scenario s;
    s.name = root["name"] ? as_string(root["name"], "name") : source;
    if (root["description"]) {
        s.description = as_string(root["description"], "description");
    }

    const YAML::Node sim = require(root, "", "simulation");
    allow_keys(sim, "simulation", {"horizon", "seed"});
    s.horizon = as_duration(require(sim, "simulation", "horizon"), "simulation.horizon");
    if (s.horizon.ns <= 0) {
        fail("simulation.horizon", sim["horizon"], "must be positive");
    }
    if (sim["seed"]) {
        const auto seed = as_int(sim["seed"], "simulation.seed");
        if (seed < 0) {
            fail("simulation.seed", sim["seed"], "must be non-negative");
        }
        s.seed = static_cast<std::uint64_t>(seed);
    }

    std::map<NodeId, std::string> ids;
    auto claim = [&](NodeId id, const std::string& path, const YAML::Node& at) {
        if (!ids.emplace(id, path).second) {
            fail(join(path, "id"), at, "node id " + std::to_string(id) + " already used by " + ids[id]);
        }
    };

    if (const YAML::Node wifi = root["wifi"]) {
        if (!wifi.IsSequence()) {
            fail("wifi", wifi, "expected a list of nodes");
        }
        for (std::size_t i = 0; i < wifi.size(); ++i) {
            const auto path = index("wifi", i);
            const YAML::Node n = wifi[i];
            allow_keys(n, path, {"id", "name", "dest", "dcf", "traffic", "forced_draws"});
            WifiNodeSpec w;
            w.id = parse_id(n, path);
            claim(w.id, path, n);
            w.name = n["name"] ? as_string(n["name"], join(path, "name")) : "wifi" + std::to_string(w.id);
            w.dcf = parse_dcf(n["dcf"], join(path, "dcf"));
            w.traffic = parse_traffic(n["traffic"], join(path, "traffic"), TrafficKind::None);
            if (n["dest"]) {
                w.dest = static_cast<NodeId>(as_int(n["dest"], join(path, "dest")));
            } else if (w.traffic.kind != TrafficKind::None) {
                fail(join(path, "dest"), n, "required field is missing (node has traffic)");
            }
            if (n["forced_draws"]) {
                w.forced_draws = as_int_list(n["forced_draws"], join(path, "forced_draws"));
                for (std::size_t k = 0; k < w.forced_draws.size(); ++k) {
                    if (w.forced_draws[k] < 0 || w.forced_draws[k] >= w.dcf.cw_len) {
                        fail(index(join(path, "forced_draws"), k), n["forced_draws"][k], "draw outside [0, cw)");
                    }
                }
            }
            s.wifi.push_back(std::move(w));
        }
    }

    if (const YAML::Node lteu = root["lteu"]) {
        if (!lteu.IsSequence()) {
            fail("lteu", lteu, "expected a list of cells");
        }
        for (std::size_t i = 0; i < lteu.size(); ++i) {
            const auto path = index("lteu", i);
            const YAML::Node n = lteu[i];
            allow_keys(n, path,
                       {"id", "name", "cell_id", "seed", "lbt_subframe", "cca", "cw", "bits_per_data_subframe",
                        "crs_ports", "data_subframes", "traffic", "forced_draws"});
            LteuCellSpec c;
            c.id = parse_id(n, path);
            claim(c.id, path, n);
            c.name = n["name"] ? as_string(n["name"], join(path, "name")) : "lteu" + std::to_string(c.id);
            c.params.cell_id = as_int(require(n, path, "cell_id"), join(path, "cell_id"));
            if (c.params.cell_id < 0 || c.params.cell_id > 503) {
                fail(join(path, "cell_id"), n["cell_id"], "must be in [0, 503]");
            }
            optional_field(n, path, "seed", [&](const YAML::Node& v, const std::string& p) {
                const auto seed = as_int(v, p);
                if (seed < 0) {
                    fail(p, v, "must be non-negative");
                }
                c.params.seed = static_cast<std::uint64_t>(seed);
                c.seed_given = true;
            });
            optional_field(n, path, "lbt_subframe", [&](const YAML::Node& v, const std::string& p) {
                const auto sf = as_int(v, p);
                if (sf < 0 || sf > 9) {
                    fail(p, v, "must be in [0, 9]");
                }
                c.params.lbt_subframe = static_cast<int>(sf);
            });
            optional_field(n, path, "cca", [&](const YAML::Node& v, const std::string& p) { c.params.cca_unit = as_duration(v, p); });
            optional_field(n, path, "cw", [&](const YAML::Node& v, const std::string& p) { c.params.cw_len = as_int(v, p); });
            optional_field(n, path, "bits_per_data_subframe", [&](const YAML::Node& v, const std::string& p) {
                c.params.bits_per_data_subframe = as_int(v, p);
            });
            optional_field(n, path, "crs_ports", [&](const YAML::Node& v, const std::string& p) {
                c.params.crs_ports = static_cast<int>(as_int(v, p));
            });
            optional_field(n, path, "data_subframes", [&](const YAML::Node& v, const std::string& p) {
                c.params.data_subframes = static_cast<int>(as_int(v, p));
            });
            try {
                c.params.validate();
            } catch (const std::invalid_argument& e) {
                fail(path, n, e.what());
            }
            c.traffic = parse_traffic(n["traffic"], join(path, "traffic"), TrafficKind::FullBuffer);
            if (n["forced_draws"]) {
                c.forced_draws = as_int_list(n["forced_draws"], join(path, "forced_draws"));
                for (std::size_t k = 0; k < c.forced_draws.size(); ++k) {
                    if (c.forced_draws[k] < 0 || c.forced_draws[k] >= c.params.cw_len) {
                        fail(index(join(path, "forced_draws"), k), n["forced_draws"][k], "draw outside [0, cw)");
                    }
                }
            }
            s.lteu.push_back(std::move(c));
        }
    }

    if (const YAML::Node intf = root["interferers"]) {
        if (!intf.IsSequence()) {
            fail("interferers", intf, "expected a list of scripted nodes");
        }
        for (std::size_t i = 0; i < intf.size(); ++i) {
            const auto path = index("interferers", i);
            const YAML::Node n = intf[i];
            allow_keys(n, path, {"id", "name", "bursts"});
            InterfererSpec x;
            x.id = parse_id(n, path);
            claim(x.id, path, n);
            x.name = n["name"] ? as_string(n["name"], join(path, "name")) : "interferer" + std::to_string(x.id);
            const YAML::Node bursts = require(n, path, "bursts");
            if (!bursts.IsSequence()) {
                fail(join(path, "bursts"), bursts, "expected a list of bursts");
            }
            for (std::size_t k = 0; k < bursts.size(); ++k) {
                const auto bpath = index(join(path, "bursts"), k);
                auto b = parse_scripted_burst(bursts[k], bpath);
                if (!x.bursts.empty() && b.start < x.bursts.back().start + x.bursts.back().length) {
                    fail(join(bpath, "start"), bursts[k], "bursts of one interferer must be ordered and disjoint");
                }
                x.bursts.push_back(b);
            }
            s.interferers.push_back(std::move(x));
        }
    }

    if (s.node_count() == 0) {
        throw ScenarioError("", 0, "scenario declares no nodes");
    }
    // Ids must number the nodes 0..n-1 so that they index the reachability matrices.
    NodeId expect = 0;
    for (const auto& [id, path] : ids) {
        if (id != expect) {
            throw ScenarioError(path + ".id", 0,
                                "node ids must be 0.." + std::to_string(ids.size() - 1) + " without gaps; " +
                                    std::to_string(expect) + " is missing");
        }
        ++expect;
    }

    const NodeId n_nodes = static_cast<NodeId>(s.node_count());
    for (std::size_t i = 0; i < s.wifi.size(); ++i) {
        const auto& w = s.wifi[i];
        if (w.dest == kBroadcast) {
            continue;
        }
        const bool is_wifi = std::any_of(s.wifi.begin(), s.wifi.end(), [&](const WifiNodeSpec& o) { return o.id == w.dest; });
        if (w.dest == w.id || !is_wifi) {
            fail(join(index("wifi", i), "dest"), root["wifi"][i]["dest"],
                 "destination " + std::to_string(w.dest) + " is not another Wi-Fi node");
        }
    }
    for (std::size_t i = 0; i < s.interferers.size(); ++i) {
        for (std::size_t k = 0; k < s.interferers[i].bursts.size(); ++k) {
            const NodeId rx = s.interferers[i].bursts[k].intended_rx;
            if (rx != kBroadcast && (rx < 0 || rx >= n_nodes)) {
                fail(join(index(join(index("interferers", i), "bursts"), k), "rx"), root["interferers"][i]["bursts"][k],
                     "receiver " + std::to_string(rx) + " does not exist");
            }
        }
    }

    parse_topology(root["topology"], s);

    if (const YAML::Node out = root["output"]) {
        allow_keys(out, "output", {"trace", "summary", "check_compliance"});
        optional_field(out, "output", "trace", [&](const YAML::Node& v, const std::string& p) { s.output.trace_path = as_string(v, p); });
        optional_field(out, "output", "summary", [&](const YAML::Node& v, const std::string& p) { s.output.summary_path = as_string(v, p); });
        optional_field(out, "output", "check_compliance", [&](const YAML::Node& v, const std::string& p) {
            s.output.check_compliance = as_bool(v, p);
        });
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError(path, 0, "cannot open scenario file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> out;
    for (const auto& [name, text] : detail::builtin_scenarios()) {
        out.emplace_back(name);
    }
    return out;
}

std::optional<std::string_view> builtin_scenario_text(std::string_view name) {
    for (const auto& [n, text] : detail::builtin_scenarios()) {
        if (n == name) {
            return text;
        }
    }
    return std::nullopt;
}

Scenario load_builtin(std::string_view name) {
    auto text = builtin_scenario_text(name);
    if (!text) {
        throw ScenarioError(std::string(name), 0, "no built-in scenario with this name");
    }
    return parse_scenario(*text, std::string(name));
}

Scenario resolve_scenario(const std::string& ref) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(ref, ec)) {
        return load_scenario(ref);
    }
    return load_builtin(ref);
}

}  // namespace coexsim
