#include "coexsim/engine.hpp"

#include <string>

namespace coexsim {

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::TimerExpiry: return "timer-expiry";
    case EventKind::CcaWindowEnd: return "cca-window-end";
    case EventKind::TxStart: return "tx-start";
    case EventKind::TxEnd: return "tx-end";
    case EventKind::FrameArrival: return "frame-arrival";
    case EventKind::SlotBoundary: return "slot-boundary";
    case EventKind::NavExpiry: return "nav-expiry";
    case EventKind::LbtWindowStart: return "lbt-window-start";
    case EventKind::AckTimeout: return "ack-timeout";
    case EventKind::BurstEnd: return "burst-end";
    }
    return "unknown";
}

EventHandle Engine::schedule(SimTime time, NodeId node, EventKind kind, Action action) {
    if (time < clock_) {
        throw SchedulerError("schedule into the past: t=" + std::to_string(time.ns) +
                             "ns < clock=" + std::to_string(clock_.ns) + "ns");
    }
    const std::uint64_t seq = next_seq_++;
    Event ev{time, seq, node, kind};
    queue_.emplace(Key{time.ns, seq}, Entry{ev, std::move(action)});
    index_.emplace(seq, time.ns);
    return EventHandle{seq};
}

CancelResult Engine::cancel(EventHandle handle) {
    if (!handle.valid() || handle.seq >= next_seq_) {
        throw SchedulerError("cancel of unknown event handle");
    }
    auto it = index_.find(handle.seq);
    if (it == index_.end()) {
        return CancelResult::AlreadyFired;
    }
    queue_.erase(Key{it->second, handle.seq});
    index_.erase(it);
    return CancelResult::Cancelled;
}

bool Engine::pending(EventHandle handle) const {
    return handle.valid() && index_.contains(handle.seq);
}

SimTime Engine::time_of(EventHandle handle) const {
    auto it = index_.find(handle.seq);
    if (!handle.valid() || it == index_.end()) {
        throw SchedulerError("time_of: handle is not pending");
    }
    return SimTime{it->second};
}

void Engine::absorb(const Event& e) {
    auto mix = [this](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            digest_ ^= (v >> (8 * i)) & 0xFFU;
            digest_ *= 0x100000001B3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(e.time.ns));
    mix(e.seq);
    mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.node)));
    mix(static_cast<std::uint64_t>(e.kind));
}

std::uint64_t Engine::run_until(SimTime t_end) {
    std::uint64_t fired = 0;
    while (!queue_.empty()) {
        auto it = queue_.begin();
        if (it->first.time > t_end.ns) {
            break;
        }
        Entry entry = std::move(it->second);
        queue_.erase(it);
        index_.erase(entry.event.seq);
        clock_ = entry.event.time;
        absorb(entry.event);
        if (record_) {
            log_.push_back(entry.event);
        }
        ++fired_;
        ++fired;
        if (entry.action) {
            entry.action(entry.event);
        }
    }
    if (clock_ < t_end) {
        clock_ = t_end;
    }
    return fired;
}

}  // namespace coexsim
