#include "coexsim/medium.hpp"

#include <algorithm>
#include <string>

namespace coexsim {

std::string_view to_string(BurstKind kind) {
    switch (kind) {
    case BurstKind::WifiData: return "wifi-data";
    case BurstKind::WifiAck: return "wifi-ack";
    case BurstKind::CtsToSelf: return "cts-to-self";
    case BurstKind::LteuPreamble: return "lteu-preamble";
    case BurstKind::LteuDataSubframes: return "lteu-data-subframes";
    }
    return "unknown";
}

std::optional<BurstKind> parse_burst_kind(std::string_view text) {
    for (auto k : {BurstKind::WifiData, BurstKind::WifiAck, BurstKind::CtsToSelf, BurstKind::LteuPreamble,
                   BurstKind::LteuDataSubframes}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

bool wifi_decodable(BurstKind kind) {
    return kind == BurstKind::WifiData || kind == BurstKind::WifiAck || kind == BurstKind::CtsToSelf;
}

Topology::Topology(std::size_t n_nodes) : n_(n_nodes), energy_(n_nodes * n_nodes, 0), decode_(n_nodes * n_nodes, 0) {}

Topology Topology::fully_connected(std::size_t n_nodes) {
    Topology t(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        for (std::size_t j = 0; j < n_nodes; ++j) {
            if (i != j) {
                t.set_energy(static_cast<NodeId>(i), static_cast<NodeId>(j), true);
                t.set_decode(static_cast<NodeId>(i), static_cast<NodeId>(j), true);
            }
        }
    }
    return t;
}

std::size_t Topology::at(NodeId tx, NodeId rx) const {
    if (tx < 0 || rx < 0 || static_cast<std::size_t>(tx) >= n_ || static_cast<std::size_t>(rx) >= n_) {
        throw MediumError("node id out of range: (" + std::to_string(tx) + ", " + std::to_string(rx) + ")");
    }
    return static_cast<std::size_t>(tx) * n_ + static_cast<std::size_t>(rx);
}

void Topology::validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
        const auto ti = static_cast<NodeId>(i);
        if (energy(ti, ti) || decode(ti, ti)) {
            throw MediumError("reachability diagonal must be false (node " + std::to_string(i) + ")");
        }
        for (std::size_t j = 0; j < n_; ++j) {
            const auto tj = static_cast<NodeId>(j);
            if (decode(ti, tj) && !energy(ti, tj)) {
                throw MediumError("decode_reach[" + std::to_string(i) + "][" + std::to_string(j) +
                                  "] is true but energy_reach is false");
            }
        }
    }
}

Medium::Medium(Topology topology) : topo_(std::move(topology)), active_(topo_.size()) {
    topo_.validate();
}

template <typename F>
void Medium::for_overlapping(SimTime a, SimTime b, F&& f) const {
    // First record whose start is >= b; everything before it starts before b.
    auto hi = std::partition_point(log_.begin(), log_.end(), [&](const Record& r) { return r.burst.start < b; });
    for (auto it = hi; it != log_.begin();) {
        --it;
        if (it->burst.start + max_len_ <= a) {
            break;
        }
        if (it->burst.end > a) {
            f(static_cast<BurstId>(it - log_.begin()), it->burst);
        }
    }
}

void Medium::mark_collided(Record& rec, NodeId rx) {
    if (std::find(rec.collided.begin(), rec.collided.end(), rx) == rec.collided.end()) {
        rec.collided.push_back(rx);
    }
}

BurstId Medium::begin_tx(NodeId node, const Burst& burst, SimTime now) {
    if (burst.tx_node != node) {
        throw MediumError("burst tx_node does not match transmitting node");
    }
    if (!(burst.start < burst.end)) {
        throw MediumError("burst must have start < end");
    }
    if (burst.start != now) {
        throw MediumError("burst must start at the current time");
    }
    if (burst.kind == BurstKind::CtsToSelf && burst.end - burst.start != kCtsToSelfLength) {
        throw MediumError("cts-to-self must last exactly 44000 ns");
    }
    if (transmitting(node)) {
        throw MediumError("node " + std::to_string(node) + " is already transmitting");
    }

    const auto id = static_cast<BurstId>(log_.size());
    std::vector<BurstId> overlapping;
    for_overlapping(burst.start, burst.end, [&](BurstId other, const Burst&) { overlapping.push_back(other); });

    log_.push_back(Record{burst, {}});
    max_len_ = std::max(max_len_, burst.end - burst.start);
    active_[static_cast<std::size_t>(node)] = id;

    const auto n = static_cast<NodeId>(topo_.size());
    for (BurstId other : overlapping) {
        Record& mine = log_[id];
        Record& theirs = log_[other];
        const NodeId a = mine.burst.tx_node;
        const NodeId b = theirs.burst.tx_node;
        for (NodeId r = 0; r < n; ++r) {
            // A transmitter is deaf to everything else while it sends.
            const bool hears_mine = r == a || topo_.energy(a, r);
            const bool hears_theirs = r == b || topo_.energy(b, r);
            if (!hears_mine || !hears_theirs) {
                continue;
            }
            if (r != a) {
                mark_collided(mine, r);
            }
            if (r != b) {
                mark_collided(theirs, r);
            }
        }
    }
    return id;
}

std::vector<Delivery> Medium::end_tx(NodeId node, SimTime now) {
    const auto active = active_burst(node);
    if (!active) {
        throw MediumError("end_tx: node " + std::to_string(node) + " is not transmitting");
    }
    const Burst& b = log_[*active].burst;
    if (b.end != now) {
        throw MediumError("end_tx at " + std::to_string(now.ns) + "ns but burst ends at " + std::to_string(b.end.ns) + "ns");
    }
    active_[static_cast<std::size_t>(node)].reset();

    std::vector<Delivery> out;
    const auto n = static_cast<NodeId>(topo_.size());
    for (NodeId r = 0; r < n; ++r) {
        if (r == node) {
            continue;
        }
        const bool intended = b.intended_rx == r;
        const bool can_decode = topo_.decode(node, r);
        if (!intended && !can_decode) {
            continue;
        }
        out.push_back(Delivery{r, intended, can_decode && !collided_at(*active, r)});
    }
    return out;
}

SenseVerdict Medium::sense(NodeId node, SimTime window_start, SimTime window_len, SimTime now) const {
    if (window_len.ns < 0 || window_start + window_len > now) {
        throw MediumError("sense window extends into the future");
    }
    SenseVerdict v;
    if (window_len.ns == 0) {
        return v;
    }
    for_overlapping(window_start, window_start + window_len, [&](BurstId id, const Burst& b) {
        if (b.tx_node != node && topo_.energy(b.tx_node, node)) {
            v.cause.push_back(id);
        }
    });
    std::sort(v.cause.begin(), v.cause.end());
    v.busy = !v.cause.empty();
    return v;
}

bool Medium::busy_now(NodeId node, SimTime now) const {
    for (std::size_t tx = 0; tx < active_.size(); ++tx) {
        const auto& a = active_[tx];
        if (!a || static_cast<NodeId>(tx) == node) {
            continue;
        }
        const Burst& b = log_[*a].burst;
        if (b.start <= now && now < b.end && topo_.energy(b.tx_node, node)) {
            return true;
        }
    }
    return false;
}

bool Medium::collided_at(BurstId id, NodeId rx) const {
    const auto& c = log_.at(id).collided;
    return std::find(c.begin(), c.end(), rx) != c.end();
}

std::vector<BurstId> Medium::decodable_frames(NodeId node, SimTime at) const {
    std::vector<BurstId> out;
    for (std::size_t i = 0; i < log_.size(); ++i) {
        const Burst& b = log_[i].burst;
        if (b.tx_node == node || b.end > at || !wifi_decodable(b.kind) || !topo_.decode(b.tx_node, node)) {
            continue;
        }
        if (!collided_at(static_cast<BurstId>(i), node)) {
            out.push_back(static_cast<BurstId>(i));
        }
    }
    return out;
}

}  // namespace coexsim
