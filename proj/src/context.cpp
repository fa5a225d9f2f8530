#include "coexsim/context.hpp"

#include "coexsim/traffic.hpp"

#include <string>

namespace coexsim {

SimContext::SimContext(Topology topology) : medium_(std::move(topology)), stations_(medium_.topology().size(), nullptr) {}

void SimContext::attach(Station& station) {
    const auto idx = static_cast<std::size_t>(station.id());
    if (idx >= stations_.size()) {
        throw std::out_of_range("station id " + std::to_string(station.id()) + " outside topology");
    }
    if (stations_[idx] != nullptr) {
        throw std::logic_error("station id " + std::to_string(station.id()) + " attached twice");
    }
    stations_[idx] = &station;
}

Station* SimContext::station(NodeId id) const {
    return stations_[static_cast<std::size_t>(id)];
}

BurstId SimContext::transmit(const Burst& burst) {
    const SimTime now = engine_.now();
    const BurstId id = medium_.begin_tx(burst.tx_node, burst, now);
    if (outcomes_.size() != id) {
        throw std::logic_error("burst outcome table out of sync with medium log");
    }
    outcomes_.push_back(BurstOutcome{burst, false, false, 0});

    Detail d;
    d.add("kind", to_string(burst.kind)).add("id", static_cast<std::int64_t>(id)).add("end", burst.end);
    if (burst.duration_field) {
        d.add("dur", *burst.duration_field);
    }
    d.add("rx", static_cast<std::int64_t>(burst.intended_rx));
    if (burst.payload_bits > 0) {
        d.add("bits", burst.payload_bits);
    }
    trace_.emit(now, burst.tx_node, "tx_start", std::move(d));

    const NodeId node = burst.tx_node;
    engine_.schedule(burst.end, node, EventKind::TxEnd, [this, node](const Event&) { finish(node); });
    refresh_all();
    return id;
}

void SimContext::finish(NodeId node) {
    const SimTime now = engine_.now();
    const BurstId id = *medium_.active_burst(node);
    // Copy: stations may start new bursts below, which grows the medium log.
    const Burst burst = medium_.burst(id);
    auto deliveries = medium_.end_tx(node, now);

    bool delivered = false;
    switch (burst.kind) {
    case BurstKind::WifiData:
    case BurstKind::WifiAck:
        for (const auto& d : deliveries) {
            if (d.intended) {
                delivered = d.success;
            }
        }
        break;
    case BurstKind::LteuDataSubframes:
        // The cell's own users are co-located: data survives unless foreign
        // energy reached the cell during the burst.
        delivered = !medium_.sense(node, burst.start, burst.end - burst.start, now).busy;
        break;
    default: delivered = true; break;
    }
    auto& outcome = outcomes_[id];
    outcome.finished = true;
    outcome.delivered = delivered;
    outcome.bits = account_bits(burst, delivered);

    Detail d;
    d.add("kind", to_string(burst.kind)).add("id", static_cast<std::int64_t>(id)).add("ok", delivered ? 1 : 0);
    if (outcome.bits > 0) {
        d.add("bits", outcome.bits);
    }
    trace_.emit(now, node, "tx_end", std::move(d));
    for (const auto& dl : deliveries) {
        if (dl.intended) {
            trace_.emit(now, dl.rx, dl.success ? "rx_ok" : "rx_fail",
                        Detail{}.add("from", static_cast<std::int64_t>(node)).add("id", static_cast<std::int64_t>(id)));
        }
    }

    if (auto* s = station(node)) {
        s->on_tx_complete(burst, id);
    }
    for (const auto& dl : deliveries) {
        if (auto* s = station(dl.rx)) {
            s->on_rx_complete(burst, id, dl.success);
        }
    }
    refresh_all();
}

void SimContext::refresh_all() {
    for (auto* s : stations_) {
        if (s != nullptr) {
            s->on_channel_change();
        }
    }
}

}  // namespace coexsim
