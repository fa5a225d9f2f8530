#pragma once

#include "coexsim/time.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace coexsim {

enum class EventKind : std::uint8_t {
    TimerExpiry,
    CcaWindowEnd,
    TxStart,
    TxEnd,
    FrameArrival,
    SlotBoundary,
    NavExpiry,
    LbtWindowStart,
    AckTimeout,
    BurstEnd,
};

std::string_view to_string(EventKind kind);

/// Thrown for scheduler misuse (past scheduling, unknown handles). These are
/// simulator bugs, not recoverable conditions.
class SchedulerError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct EventHandle {
    std::uint64_t seq = ~std::uint64_t{0};

    bool valid() const { return seq != ~std::uint64_t{0}; }
    friend bool operator==(EventHandle, EventHandle) = default;
};

struct Event {
    SimTime time;
    std::uint64_t seq = 0;
    NodeId node = 0;
    EventKind kind = EventKind::TimerExpiry;
};

enum class CancelResult { Cancelled, AlreadyFired };

/// Single-queue discrete-event scheduler. Events fire in (time, seq) order;
/// seq is the insertion counter, so same-time events fire in scheduling order.
class Engine {
public:
    using Action = std::function<void(const Event&)>;

    SimTime now() const { return clock_; }

    EventHandle schedule(SimTime time, NodeId node, EventKind kind, Action action = {});
    CancelResult cancel(EventHandle handle);

    bool pending(EventHandle handle) const;
    /// Fire time of a pending event. Throws if the handle is not pending.
    SimTime time_of(EventHandle handle) const;

    /// Fires every event with time <= t_end and leaves the clock at
    /// max(last fired time, t_end). Returns the number of events fired.
    std::uint64_t run_until(SimTime t_end);

    std::size_t queue_size() const { return queue_.size(); }
    std::uint64_t fired_count() const { return fired_; }

    /// FNV-1a digest over (time, seq, node, kind) of every fired event.
    std::uint64_t trace_digest() const { return digest_; }

    /// Keeps a copy of every fired event (off by default).
    void record_log(bool on) { record_ = on; }
    const std::vector<Event>& log() const { return log_; }

private:
    struct Key {
        std::int64_t time;
        std::uint64_t seq;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    struct Entry {
        Event event;
        Action action;
    };

    void absorb(const Event& e);

    SimTime clock_{0};
    std::uint64_t next_seq_ = 0;
    std::uint64_t fired_ = 0;
    std::uint64_t digest_ = 0xCBF29CE484222325ULL;
    std::map<Key, Entry> queue_;
    std::map<std::uint64_t, std::int64_t> index_;  // seq -> time, pending only
    bool record_ = false;
    std::vector<Event> log_;
};

}  // namespace coexsim
