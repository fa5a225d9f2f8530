#pragma once

#include "coexsim/time.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace coexsim {

enum class BurstKind : std::uint8_t {
    WifiData,
    WifiAck,
    CtsToSelf,
    LteuPreamble,
    LteuDataSubframes,
};

std::string_view to_string(BurstKind kind);
std::optional<BurstKind> parse_burst_kind(std::string_view text);

/// Kinds whose MAC header (and duration field) a Wi-Fi receiver can decode.
bool wifi_decodable(BurstKind kind);

inline constexpr SimTime kCtsToSelfLength{44'000};

class MediumError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Binary reachability. energy[t][r]: r's energy detector fires on t's
/// transmissions. decode[t][r]: r can demodulate frames from t.
class Topology {
public:
    Topology() = default;
    explicit Topology(std::size_t n_nodes);
    /// Every off-diagonal pair reaches in both senses.
    static Topology fully_connected(std::size_t n_nodes);

    std::size_t size() const { return n_; }
    bool energy(NodeId tx, NodeId rx) const { return energy_[at(tx, rx)] != 0; }
    bool decode(NodeId tx, NodeId rx) const { return decode_[at(tx, rx)] != 0; }
    void set_energy(NodeId tx, NodeId rx, bool v) { energy_[at(tx, rx)] = v; }
    void set_decode(NodeId tx, NodeId rx, bool v) { decode_[at(tx, rx)] = v; }

    /// Throws MediumError naming the first offending pair.
    void validate() const;

private:
    std::size_t at(NodeId tx, NodeId rx) const;

    std::size_t n_ = 0;
    std::vector<std::uint8_t> energy_;
    std::vector<std::uint8_t> decode_;
};

using BurstId = std::uint64_t;

struct Burst {
    NodeId tx_node = 0;
    SimTime start;
    SimTime end;
    BurstKind kind = BurstKind::WifiData;
    std::optional<SimTime> duration_field;
    std::int64_t payload_bits = 0;
    NodeId intended_rx = kBroadcast;

    Interval span() const { return {start, end}; }
};

struct SenseVerdict {
    bool busy = false;
    std::vector<BurstId> cause;
};

struct Delivery {
    NodeId rx = 0;
    bool intended = false;
    bool success = false;
};

/// Shared channel state. Bursts are kept in a log ordered by start time; all
/// interval tests use half-open [start, end).
class Medium {
public:
    explicit Medium(Topology topology);

    const Topology& topology() const { return topo_; }

    /// Registers a burst starting now. The burst's end is fixed up front.
    BurstId begin_tx(NodeId node, const Burst& burst, SimTime now);

    /// Completes the node's active burst. One outcome per node that either is
    /// the intended receiver or can decode the transmitter.
    std::vector<Delivery> end_tx(NodeId node, SimTime now);

    /// Energy sensed by `node` over [start, start + len). The window must be
    /// in the past or end exactly at `now`.
    SenseVerdict sense(NodeId node, SimTime window_start, SimTime window_len, SimTime now) const;

    /// Live carrier-sense state: at least one audible burst covers `now`.
    bool busy_now(NodeId node, SimTime now) const;

    /// Completed, uncollided, Wi-Fi-decodable bursts that `node` can read.
    std::vector<BurstId> decodable_frames(NodeId node, SimTime at) const;

    bool transmitting(NodeId node) const { return active_[static_cast<std::size_t>(node)].has_value(); }
    std::optional<BurstId> active_burst(NodeId node) const { return active_[static_cast<std::size_t>(node)]; }

    const Burst& burst(BurstId id) const { return log_.at(id).burst; }
    bool collided_at(BurstId id, NodeId rx) const;
    std::size_t burst_count() const { return log_.size(); }

private:
    struct Record {
        Burst burst;
        std::vector<NodeId> collided;  // receivers at which this burst overlapped another
    };

    void mark_collided(Record& rec, NodeId rx);
    /// Ids of bursts whose span overlaps [a, b), in log order.
    template <typename F>
    void for_overlapping(SimTime a, SimTime b, F&& f) const;

    Topology topo_;
    std::vector<Record> log_;
    std::vector<std::optional<BurstId>> active_;
    SimTime max_len_{0};
};

}  // namespace coexsim
