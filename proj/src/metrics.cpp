#include "coexsim/metrics.hpp"

#include <algorithm>
#include <set>

namespace coexsim {

std::optional<double> jain_index(std::span<const double> shares) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double x : shares) {
        if (x < 0.0) {
            throw std::invalid_argument("jain_index: shares must be non-negative");
        }
        sum += x;
        sum_sq += x * x;
    }
    if (shares.empty() || sum_sq == 0.0) {
        return std::nullopt;
    }
    return (sum * sum) / (static_cast<double>(shares.size()) * sum_sq);
}

SimTime union_length(std::vector<Interval> spans, SimTime horizon) {
    for (auto& s : spans) {
        s.begin = std::max(s.begin, SimTime{0});
        s.end = std::min(s.end, horizon);
    }
    std::erase_if(spans, [](const Interval& s) { return !(s.begin < s.end); });
    std::sort(spans.begin(), spans.end(), [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
    SimTime total{0};
    std::optional<Interval> cur;
    for (const auto& s : spans) {
        if (cur && s.begin <= cur->end) {
            cur->end = std::max(cur->end, s.end);
            continue;
        }
        if (cur) {
            total += cur->length();
        }
        cur = s;
    }
    if (cur) {
        total += cur->length();
    }
    return total;
}

namespace {
bool is_data(BurstKind k) {
    return k == BurstKind::WifiData || k == BurstKind::LteuDataSubframes;
}
}  // namespace

MetricsReport summarize(std::span<const BurstOutcome> bursts, std::size_t n_nodes, SimTime horizon,
                        std::span<const NodeId> contenders) {
    MetricsReport r;
    r.horizon = horizon;
    r.nodes.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        r.nodes[i].node = static_cast<NodeId>(i);
    }
    std::vector<Interval> spans;
    spans.reserve(bursts.size());
    for (const auto& o : bursts) {
        const Burst& b = o.burst;
        auto& m = r.nodes.at(static_cast<std::size_t>(b.tx_node));
        const SimTime begin = std::min(b.start, horizon);
        const SimTime end = std::min(b.end, horizon);
        m.airtime_ns += (end - begin).ns;
        spans.push_back(b.span());
        if (is_data(b.kind)) {
            ++m.attempted_bursts;
            if (o.finished && !o.delivered) {
                ++m.collided_bursts;
            }
        }
        m.delivered_bits += o.bits;
        r.total_bits += o.bits;
    }
    r.channel_busy_fraction = horizon.ns > 0 ? static_cast<double>(union_length(spans, horizon).ns) / static_cast<double>(horizon.ns) : 0.0;

    std::vector<double> shares;
    for (NodeId n : contenders) {
        shares.push_back(static_cast<double>(r.nodes.at(static_cast<std::size_t>(n)).airtime_ns));
    }
    r.jain_fairness = jain_index(shares);
    return r;
}

ComplianceReport audit_compliance(std::span<const TraceRecord> trace) {
    struct Period {
        SimTime start;
        SimTime end;
        bool led_by_cts = false;
    };
    std::map<NodeId, std::vector<Period>> periods;
    std::map<NodeId, std::vector<Interval>> reserved;
    std::map<NodeId, CellAudit> cells;
    std::set<NodeId> lteu_nodes;

    auto field = [&](const TraceRecord& rec, std::size_t idx, std::string_view key) {
        auto v = rec.maybe_integer(key);
        if (!v) {
            throw TraceError(idx + 1, "'" + rec.event + "' record lacks integer field '" + std::string(key) + "'");
        }
        return *v;
    };

    // First pass: which nodes are LTE-u cells.
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& rec = trace[i];
        if (rec.event == "tx_start") {
            auto kind = rec.get("kind");
            if (!kind || !parse_burst_kind(*kind)) {
                throw TraceError(i + 1, "tx_start record has a missing or unknown kind");
            }
            if (*kind == "lteu-preamble" || *kind == "lteu-data-subframes") {
                lteu_nodes.insert(rec.node);
            }
        } else if (rec.event == "cca" || rec.event == "lbt_start" || rec.event == "preamble") {
            lteu_nodes.insert(rec.node);
        }
    }

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& rec = trace[i];
        if (!lteu_nodes.contains(rec.node)) {
            continue;
        }
        auto& cell = cells[rec.node];
        cell.node = rec.node;
        if (rec.event == "tx_start") {
            const SimTime start = rec.time;
            const SimTime end{field(rec, i, "end")};
            if (!(start < end)) {
                throw TraceError(i + 1, "tx_start with end <= start");
            }
            auto& ps = periods[rec.node];
            // Contiguous transmissions of one cell form one occupancy period.
            if (!ps.empty() && ps.back().end == start) {
                ps.back().end = end;
            } else {
                ps.push_back(Period{start, end, rec.get("kind") == std::optional<std::string_view>{"cts-to-self"}});
            }
        } else if (rec.event == "cca") {
            const SimTime len{field(rec, i, "len")};
            ++cell.cca_windows;
            cell.min_cca_window = cell.min_cca_window ? std::min(*cell.min_cca_window, len) : len;
            if (len < kMinCcaWindow) {
                cell.pass_cca_min = false;
            }
        } else if (rec.event == "lbt_start") {
            reserved[rec.node].push_back(Interval{SimTime{field(rec, i, "reserved_start")}, SimTime{field(rec, i, "reserved_end")}});
        }
    }

    ComplianceReport report;
    for (auto& [node, ps] : periods) {
        auto& cell = cells[node];
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto& p = ps[k];
            BurstAudit a;
            a.node = node;
            a.start = p.start;
            a.end = p.end;
            a.occupancy = p.end - p.start;
            a.pass_occupancy_range = a.occupancy >= kMinOccupancy && a.occupancy <= kMaxOccupancy;
            a.pass_cap = a.occupancy <= kMaxOccupancyCap;
            if (!a.pass_occupancy_range || !a.pass_cap) {
                ++report.violations;
            }
            report.bursts.push_back(a);
            ++cell.bursts;
            if (k > 0) {
                const SimTime gap = p.start - ps[k - 1].end;
                cell.min_inter_burst_idle = cell.min_inter_burst_idle ? std::min(*cell.min_inter_burst_idle, gap) : gap;
                if (gap < kMinIdle) {
                    cell.pass_idle_5pct = false;
                    ++report.violations;
                }
                const SimTime prev_occ = ps[k - 1].end - ps[k - 1].start;
                if (gap.ns * 20 < prev_occ.ns) {
                    cell.pass_idle_per_burst = false;
                }
            }
            for (const auto& slot : reserved[node]) {
                if (slot.overlaps(Interval{p.start, p.end})) {
                    cell.pass_reserved_slot = false;
                    ++report.violations;
                }
            }
        }
    }
    for (auto& [node, cell] : cells) {
        if (!cell.pass_cca_min) {
            ++report.violations;
        }
        report.cells.push_back(cell);
    }
    report.pass = report.violations == 0;
    return report;
}

}  // namespace coexsim
