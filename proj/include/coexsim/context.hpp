#pragma once

#include "coexsim/engine.hpp"
#include "coexsim/medium.hpp"
#include "coexsim/trace.hpp"

#include <cstdint>
#include <vector>

namespace coexsim {

/// A node attached to the shared channel.
class Station {
public:
    explicit Station(NodeId id) : id_(id) {}
    virtual ~Station() = default;
    Station(const Station&) = delete;
    Station& operator=(const Station&) = delete;

    NodeId id() const { return id_; }

    /// Schedules the node's initial events. Called once at t=0.
    virtual void start() {}
    /// Carrier sense or NAV may have changed at the current time.
    virtual void on_channel_change() {}
    /// A burst this node could decode (or was addressed to) has ended.
    virtual void on_rx_complete(const Burst& /*burst*/, BurstId /*id*/, bool /*success*/) {}
    /// One of this node's own bursts has ended.
    virtual void on_tx_complete(const Burst& /*burst*/, BurstId /*id*/) {}

private:
    NodeId id_;
};

/// Outcome bookkeeping for one burst, filled in when it ends.
struct BurstOutcome {
    Burst burst;
    bool finished = false;
    bool delivered = false;
    std::int64_t bits = 0;
};

/// Shared services for the stations of one simulation: clock, channel and
/// trace. Owns the end-of-burst choreography so that every station observes
/// the same ordering: sender completion, then deliveries, then carrier-sense
/// refresh.
class SimContext {
public:
    explicit SimContext(Topology topology);

    Engine& engine() { return engine_; }
    const Engine& engine() const { return engine_; }
    Medium& medium() { return medium_; }
    const Medium& medium() const { return medium_; }
    TraceWriter& trace() { return trace_; }
    const TraceWriter& trace() const { return trace_; }
    SimTime now() const { return engine_.now(); }

    void attach(Station& station);

    /// Starts `burst` now on behalf of burst.tx_node and schedules its end.
    BurstId transmit(const Burst& burst);

    void refresh_all();

    const std::vector<BurstOutcome>& outcomes() const { return outcomes_; }

private:
    void finish(NodeId node);
    Station* station(NodeId id) const;

    Engine engine_;
    Medium medium_;
    TraceWriter trace_;
    std::vector<Station*> stations_;
    std::vector<BurstOutcome> outcomes_;
};

}  // namespace coexsim
