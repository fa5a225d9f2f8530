#include "coexsim/dcf.hpp"

#include <string>

namespace coexsim {

void DcfParams::validate() const {
    if (!(sifs < difs)) {
        throw std::invalid_argument("sifs must be shorter than difs");
    }
    if (sifs.ns <= 0 || backoff_slot.ns <= 0 || ack_len.ns <= 0) {
        throw std::invalid_argument("sifs, backoff_slot and ack_len must be positive");
    }
    if (cw_len < 1) {
        throw std::invalid_argument("cw_len must be >= 1");
    }
    if (rate_bits_num <= 0 || rate_bits_den <= 0) {
        throw std::invalid_argument("data rate must be positive");
    }
}

std::string_view to_string(DcfPhase phase) {
    switch (phase) {
    case DcfPhase::Idle: return "idle";
    case DcfPhase::WaitDifs: return "wait-difs";
    case DcfPhase::Backoff: return "backoff";
    case DcfPhase::Deferring: return "deferring";
    case DcfPhase::Transmitting: return "transmitting";
    case DcfPhase::WaitAck: return "wait-ack";
    }
    return "unknown";
}

DcfNode::DcfNode(SimContext& ctx, NodeId id, DcfParams params, TrafficModel traffic, NodeId dest, std::uint64_t seed)
    : Station(id),
      ctx_(ctx),
      params_(std::move(params)),
      traffic_(std::move(traffic), derive_seed(seed, 1)),
      draws_(derive_seed(seed, 2)),
      dest_(dest) {
    params_.validate();
}

DcfState DcfNode::state() const {
    DcfState s;
    s.phase = phase_;
    s.counter = counter_;
    s.frozen = phase_ == DcfPhase::Deferring && counter_.has_value();
    s.nav_until = nav_until_;
    s.queued = queue_.size();
    return s;
}

SimTime DcfNode::data_airtime() const {
    return wifi_frame_airtime(traffic_.model().wifi_frame_payload_bits, params_.rate_bits_num, params_.rate_bits_den);
}

bool DcfNode::self_busy() const {
    return ctx_.medium().transmitting(id()) || phase_ == DcfPhase::Transmitting || ack_pending_;
}

bool DcfNode::effective_busy(SimTime now) const {
    return self_busy() || nav_until_ > now || ctx_.medium().busy_now(id(), now);
}

void DcfNode::cancel_timer() {
    if (ctx_.engine().pending(timer_)) {
        ctx_.engine().cancel(timer_);
    }
    timer_ = EventHandle{};
}

void DcfNode::start() {
    if (auto t = traffic_.first_arrival()) {
        arm_arrival(*t);
    }
}

void DcfNode::arm_arrival(SimTime t) {
    ctx_.engine().schedule(t, id(), EventKind::FrameArrival, [this](const Event& e) {
        on_frame_arrival(e.time);
        if (!traffic_.full_buffer()) {
            if (auto next = traffic_.next_arrival(e.time)) {
                arm_arrival(*next);
            }
        }
    });
}

std::int64_t DcfNode::draw_backoff() {
    return draws_.draw_uniform(params_.cw_len);
}

void DcfNode::on_frame_arrival(SimTime now) {
    queue_.push_back(WifiFrame{traffic_.model().wifi_frame_payload_bits, dest_, now});
    ctx_.trace().emit(now, id(), "arrival", Detail{}.add("queue", static_cast<std::int64_t>(queue_.size())));
    if (phase_ == DcfPhase::Idle) {
        fast_path_ = !effective_busy(now);
        enter_contention(now);
    }
}

void DcfNode::enter_contention(SimTime now) {
    const bool busy = effective_busy(now);
    last_busy_ = busy;
    if (busy) {
        fast_path_ = false;
        phase_ = DcfPhase::Deferring;
        return;
    }
    phase_ = DcfPhase::WaitDifs;
    timer_ = ctx_.engine().schedule(now + params_.difs, id(), EventKind::TimerExpiry,
                                    [this](const Event& e) { on_difs_end(e.time); });
}

void DcfNode::on_channel_change() {
    const SimTime now = ctx_.now();
    const bool busy = effective_busy(now);
    if (busy != last_busy_) {
        last_busy_ = busy;
        on_channel_transition(busy, now);
    }
}

void DcfNode::on_channel_transition(bool now_busy, SimTime at) {
    auto& engine = ctx_.engine();
    // A timer due at this very instant still fires: its decision rests on
    // the window that closed at `at`, which a burst starting at `at` does not touch.
    const bool due_now = engine.pending(timer_) && engine.time_of(timer_) == at;
    if (now_busy) {
        if (phase_ == DcfPhase::WaitDifs) {
            if (due_now) {
                return;
            }
            cancel_timer();
            fast_path_ = false;
            phase_ = DcfPhase::Deferring;
        } else if (phase_ == DcfPhase::Backoff) {
            if (due_now) {
                return;
            }
            *counter_ -= (at - countdown_since_) / params_.backoff_slot;
            cancel_timer();
            phase_ = DcfPhase::Deferring;
            ctx_.trace().emit(at, id(), "freeze", Detail{}.add("counter", *counter_));
        }
        return;
    }
    if (phase_ == DcfPhase::Deferring) {
        phase_ = DcfPhase::WaitDifs;
        timer_ = engine.schedule(at + params_.difs, id(), EventKind::TimerExpiry,
                                 [this](const Event& e) { on_difs_end(e.time); });
    }
}

void DcfNode::on_difs_end(SimTime now) {
    timer_ = EventHandle{};
    if (fast_path_) {
        fast_path_ = false;
        begin_access(now);
        return;
    }
    if (!counter_) {
        counter_ = draw_backoff();
        ctx_.trace().emit(now, id(), "backoff_draw", Detail{}.add("value", *counter_));
    }
    if (*counter_ == 0) {
        begin_access(now);
        return;
    }
    if (effective_busy(now)) {
        phase_ = DcfPhase::Deferring;
        ctx_.trace().emit(now, id(), "freeze", Detail{}.add("counter", *counter_));
        return;
    }
    phase_ = DcfPhase::Backoff;
    countdown_since_ = now;
    ctx_.trace().emit(now, id(), "resume", Detail{}.add("counter", *counter_));
    timer_ = ctx_.engine().schedule(now + params_.backoff_slot * *counter_, id(), EventKind::TimerExpiry,
                                    [this](const Event& e) { on_backoff_expiry(e.time); });
}

void DcfNode::on_backoff_expiry(SimTime now) {
    timer_ = EventHandle{};
    counter_ = 0;
    begin_access(now);
}

void DcfNode::begin_access(SimTime now) {
    counter_.reset();
    phase_ = DcfPhase::Transmitting;
    if (params_.use_cts_to_self) {
        const SimTime data = wifi_frame_airtime(queue_.front().payload_bits, params_.rate_bits_num, params_.rate_bits_den);
        send_cts_to_self(params_.sifs + data + params_.sifs + params_.ack_len);
    } else {
        send_data(now);
    }
}

Burst DcfNode::send_cts_to_self(SimTime protect_len) {
    Burst cts;
    cts.tx_node = id();
    cts.start = ctx_.now();
    cts.end = cts.start + kCtsToSelfLength;
    cts.kind = BurstKind::CtsToSelf;
    cts.duration_field = protect_len;
    cts.intended_rx = id();
    ctx_.transmit(cts);
    return cts;
}

void DcfNode::send_data(SimTime now) {
    const WifiFrame& f = queue_.front();
    Burst data;
    data.tx_node = id();
    data.start = now;
    data.end = now + wifi_frame_airtime(f.payload_bits, params_.rate_bits_num, params_.rate_bits_den);
    data.kind = BurstKind::WifiData;
    data.duration_field = params_.sifs + params_.ack_len;
    data.payload_bits = f.payload_bits;
    data.intended_rx = f.dest;
    ctx_.transmit(data);
}

void DcfNode::send_ack(SimTime now, NodeId to) {
    ack_pending_ = false;
    if (ctx_.medium().transmitting(id())) {
        ctx_.trace().emit(now, id(), "ack_skip", Detail{}.add("to", static_cast<std::int64_t>(to)));
        ctx_.refresh_all();
        return;
    }
    Burst ack;
    ack.tx_node = id();
    ack.start = now;
    ack.end = now + params_.ack_len;
    ack.kind = BurstKind::WifiAck;
    ack.duration_field = SimTime{0};
    ack.intended_rx = to;
    ctx_.transmit(ack);
}

void DcfNode::on_tx_complete(const Burst& burst, BurstId) {
    const SimTime now = ctx_.now();
    switch (burst.kind) {
    case BurstKind::CtsToSelf:
        ctx_.engine().schedule(now + params_.sifs, id(), EventKind::TxStart, [this](const Event& e) { send_data(e.time); });
        break;
    case BurstKind::WifiData:
        phase_ = DcfPhase::WaitAck;
        ack_timeout_ = ctx_.engine().schedule(now + params_.sifs + params_.ack_len + params_.backoff_slot, id(),
                                              EventKind::AckTimeout, [this](const Event& e) {
                                                  ctx_.trace().emit(e.time, id(), "ack_timeout");
                                                  finish_frame(e.time, false);
                                              });
        break;
    default: break;
    }
}

void DcfNode::on_rx_complete(const Burst& burst, BurstId, bool success) {
    if (!success) {
        return;
    }
    const SimTime now = ctx_.now();
    const bool for_me = burst.intended_rx == id();
    if (for_me && burst.kind == BurstKind::WifiData) {
        ack_pending_ = true;
        const NodeId to = burst.tx_node;
        ctx_.engine().schedule(now + params_.sifs, id(), EventKind::TxStart,
                               [this, to](const Event& e) { send_ack(e.time, to); });
        return;
    }
    if (for_me && burst.kind == BurstKind::WifiAck) {
        if (phase_ == DcfPhase::WaitAck) {
            ctx_.engine().cancel(ack_timeout_);
            finish_frame(now, true);
        }
        return;
    }
    if (!for_me && wifi_decodable(burst.kind) && burst.duration_field && burst.duration_field->ns > 0) {
        set_nav(burst.end + *burst.duration_field);
    }
}

void DcfNode::set_nav(SimTime until) {
    if (until <= nav_until_) {
        return;
    }
    nav_until_ = until;
    ctx_.trace().emit(ctx_.now(), id(), "nav", Detail{}.add("until", until));
    ctx_.engine().schedule(until, id(), EventKind::NavExpiry, [this](const Event&) { on_channel_change(); });
}

void DcfNode::finish_frame(SimTime now, bool delivered) {
    if (delivered) {
        queue_.pop_front();
        if (queue_.empty() && traffic_.full_buffer()) {
            queue_.push_back(WifiFrame{traffic_.model().wifi_frame_payload_bits, dest_, now});
            ctx_.trace().emit(now, id(), "arrival", Detail{}.add("queue", std::int64_t{1}));
        }
    }
    counter_.reset();
    fast_path_ = false;
    if (queue_.empty()) {
        phase_ = DcfPhase::Idle;
        last_busy_ = effective_busy(now);
        return;
    }
    enter_contention(now);
}

}  // namespace coexsim
