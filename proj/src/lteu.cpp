#include "coexsim/lteu.hpp"

#include <algorithm>
#include <string>

namespace coexsim {

FrameGrid::FrameGrid() {
    for (int k = 0; k <= symbols_per_slot; ++k) {
        // round(slot_len * k / 7) in integer arithmetic (half rounds up).
        const std::int64_t num = slot_len.ns * k;
        symbol_offsets[static_cast<std::size_t>(k)] = SimTime{(2 * num + symbols_per_slot) / (2 * symbols_per_slot)};
    }
}

SimTime FrameGrid::symbol_boundary_at_or_after(SimTime t) const {
    const SimTime base = slot_start(t);
    for (const auto off : symbol_offsets) {
        if (base + off >= t) {
            return base + off;
        }
    }
    return base + slot_len;
}

SimTime FrameGrid::symbol_boundary_after(SimTime t) const {
    const SimTime base = slot_start(t);
    for (const auto off : symbol_offsets) {
        if (base + off > t) {
            return base + off;
        }
    }
    return base + slot_len;
}

bool FrameGrid::on_symbol_boundary(SimTime t) const {
    return symbol_boundary_at_or_after(t) == t;
}

std::vector<Interval> FrameGrid::symbols_between(SimTime from, SimTime to) const {
    if (!on_symbol_boundary(from) || !on_symbol_boundary(to) || to < from) {
        throw LbtError("symbols_between: endpoints must be ordered symbol boundaries");
    }
    std::vector<Interval> out;
    for (SimTime b = from; b < to;) {
        const SimTime nb = symbol_boundary_after(b);
        out.push_back(Interval{b, nb});
        b = nb;
    }
    return out;
}

void LteuParams::validate() const {
    if (cca_unit < kMinCcaObservation) {
        throw std::invalid_argument("cca_unit must be at least 20000 ns (got " + std::to_string(cca_unit.ns) + ")");
    }
    if (cca_unit > FrameGrid::slot_len) {
        throw std::invalid_argument("cca_unit must not exceed one slot");
    }
    if (cw_len < 1) {
        throw std::invalid_argument("cw_len must be >= 1");
    }
    if (cell_id < 0 || cell_id > 503) {
        throw std::invalid_argument("cell_id must be in [0, 503] (got " + std::to_string(cell_id) + ")");
    }
    if (data_subframes != 9) {
        throw std::invalid_argument("data_subframes must be 9");
    }
    if (bits_per_data_subframe < 0) {
        throw std::invalid_argument("bits_per_data_subframe must be non-negative");
    }
    if (crs_ports != 1 && crs_ports != 2 && crs_ports != 4) {
        throw std::invalid_argument("crs_ports must be 1, 2 or 4");
    }
    if (lbt_subframe < 0 || lbt_subframe >= FrameGrid::subframes_per_frame) {
        throw std::invalid_argument("lbt_subframe must be in [0, 9]");
    }
}

SimTime lbt_window_start(const FrameGrid&, int lbt_subframe_index, SimTime cca_unit, SimTime frame_start) {
    if (lbt_subframe_index < 0 || lbt_subframe_index >= FrameGrid::subframes_per_frame) {
        throw LbtError("LBT subframe index out of range: " + std::to_string(lbt_subframe_index));
    }
    return frame_start + FrameGrid::subframe_len * lbt_subframe_index + FrameGrid::slot_len - cca_unit;
}

SimTime next_lbt_window(const FrameGrid& grid, int lbt_subframe_index, SimTime cca_unit, SimTime t) {
    const SimTime offset = lbt_window_start(grid, lbt_subframe_index, cca_unit);
    std::int64_t frame = 0;
    if (t > offset) {
        const std::int64_t span = (t - offset).ns;
        frame = (span + FrameGrid::frame_len.ns - 1) / FrameGrid::frame_len.ns;
    }
    return FrameGrid::frame_len * frame + offset;
}

PreambleLayout build_preamble(SimTime success_time, const FrameGrid& grid, int data_subframes,
                              std::optional<Interval> reserved) {
    if (reserved && reserved->contains(success_time)) {
        throw LbtError("LBT success at " + std::to_string(success_time.ns) + "ns inside the reserved idle slot");
    }
    if (data_subframes < 1) {
        throw LbtError("data_subframes must be positive");
    }
    PreambleLayout p;
    p.cts_start = success_time;
    p.cts_end = success_time + kCtsToSelfLength;
    p.upbch_start = p.cts_end;
    // The uPBCH cyclic prefix stretches to the next grid boundary, then one full symbol follows.
    p.upbch_end = grid.symbol_boundary_after(grid.symbol_boundary_at_or_after(p.cts_end));

    const SimTime next_subframe = FrameGrid::subframe_start(success_time) + FrameGrid::subframe_len;
    std::int64_t slots = 2LL * data_subframes;
    if (p.upbch_end <= next_subframe) {
        p.burst_data_start = next_subframe;
    } else {
        p.burst_data_start = next_subframe + FrameGrid::slot_len;
        p.slot_aligned = true;
        --slots;
    }
    const SimTime cap = FrameGrid::subframe_len * data_subframes + FrameGrid::slot_len;
    while (slots > 0 && (p.burst_data_start + FrameGrid::slot_len * slots) - p.cts_start > cap) {
        --slots;
    }
    if (slots == 0) {
        throw LbtError("no data slot fits under the occupancy cap");
    }
    p.data_slots = slots;
    p.burst_end = p.burst_data_start + FrameGrid::slot_len * slots;
    p.crs_symbols = grid.symbols_between(p.upbch_end, p.burst_data_start);
    p.duration_field = p.burst_end - p.cts_end;
    p.secured_subframe = FrameGrid::subframe_index(success_time);
    return p;
}

std::string_view to_string(LbtPhase phase) {
    switch (phase) {
    case LbtPhase::Idle: return "idle";
    case LbtPhase::WaitLbtWindow: return "wait-lbt-window";
    case LbtPhase::InitialCca: return "initial-cca";
    case LbtPhase::ContinuousCca: return "continuous-cca";
    case LbtPhase::Countdown: return "countdown";
    case LbtPhase::PreambleTx: return "preamble-tx";
    case LbtPhase::ActiveBurst: return "active-burst";
    }
    return "unknown";
}

LbtCell::LbtCell(SimContext& ctx, NodeId id, LteuParams params, TrafficModel traffic, std::uint64_t traffic_seed)
    : Station(id),
      ctx_(ctx),
      params_(std::move(params)),
      traffic_(std::move(traffic), traffic_seed),
      countdown_(params_.seed, params_.cell_id),
      lbt_subframe_(params_.lbt_subframe) {
    params_.validate();
}

LbtState LbtCell::state() const {
    LbtState s;
    s.phase = phase_;
    s.remaining = counter_;
    s.frozen = frozen_;
    s.lbt_subframe_index = lbt_subframe_;
    if (phase_ == LbtPhase::ActiveBurst || phase_ == LbtPhase::PreambleTx) {
        s.active_until = current_->burst_end;
    }
    return s;
}

void LbtCell::start() {
    if (auto t = traffic_.first_arrival()) {
        arm_arrival(*t);
    }
}

void LbtCell::arm_arrival(SimTime t) {
    ctx_.engine().schedule(t, id(), EventKind::FrameArrival, [this](const Event& e) {
        on_data_arrival(e.time);
        if (!traffic_.full_buffer()) {
            if (auto next = traffic_.next_arrival(e.time)) {
                arm_arrival(*next);
            }
        }
    });
}

void LbtCell::on_data_arrival(SimTime now) {
    ++queued_;
    ctx_.trace().emit(now, id(), "arrival", Detail{}.add("queue", queued_));
    if (phase_ == LbtPhase::Idle) {
        schedule_lbt(now);
    }
}

void LbtCell::schedule_lbt(SimTime from) {
    const SimTime w = next_lbt_window(grid_, lbt_subframe_, params_.cca_unit, from);
    phase_ = LbtPhase::WaitLbtWindow;
    ctx_.engine().schedule(w, id(), EventKind::LbtWindowStart, [this](const Event& e) { begin_lbt(e.time); });
}

void LbtCell::begin_lbt(SimTime window_start) {
    const SimTime slot1 = window_start + params_.cca_unit;
    reserved_ = Interval{slot1 - FrameGrid::slot_len, slot1};
    phase_ = LbtPhase::InitialCca;
    counter_.reset();
    frozen_ = false;
    ctx_.trace().emit(window_start, id(), "lbt_start",
                      Detail{}
                          .add("sf", static_cast<std::int64_t>(lbt_subframe_))
                          .add("reserved_start", reserved_.begin)
                          .add("reserved_end", reserved_.end)
                          .add("cca", params_.cca_unit));
    next_cca(window_start);
}

void LbtCell::next_cca(SimTime now) {
    ctx_.engine().schedule(now + params_.cca_unit, id(), EventKind::CcaWindowEnd,
                           [this](const Event& e) { on_cca_end(e.time); });
}

void LbtCell::on_cca_end(SimTime now) {
    const SimTime window_start = now - params_.cca_unit;
    const auto verdict = ctx_.medium().sense(id(), window_start, params_.cca_unit, now);
    const bool nav_blocked = nav_until_ > window_start;
    const bool clear = !verdict.busy && !nav_blocked;

    auto emit_cca = [&] {
        Detail d;
        d.add("start", window_start).add("len", params_.cca_unit);
        d.add("result", clear ? "clear" : (verdict.busy ? "busy" : "nav"));
        if (counter_) {
            d.add("counter", *counter_);
        }
        ctx_.trace().emit(now, id(), "cca", std::move(d));
    };

    switch (phase_) {
    case LbtPhase::InitialCca:
        emit_cca();
        if (clear) {
            ctx_.trace().emit(now, id(), "lbt_success", Detail{}.add("mode", "fast"));
            secure(now);
            return;
        }
        phase_ = LbtPhase::ContinuousCca;
        break;
    case LbtPhase::ContinuousCca:
        if (clear) {
            counter_ = countdown_.draw_countdown(params_.cw_len);
            ctx_.trace().emit(now, id(), "countdown_draw", Detail{}.add("value", *counter_));
            emit_cca();
            if (*counter_ == 0) {
                ctx_.trace().emit(now, id(), "lbt_success", Detail{}.add("mode", "countdown"));
                secure(now);
                return;
            }
            phase_ = LbtPhase::Countdown;
        } else {
            emit_cca();
        }
        break;
    case LbtPhase::Countdown:
        if (clear) {
            if (frozen_) {
                frozen_ = false;
                ctx_.trace().emit(now, id(), "countdown_resume", Detail{}.add("counter", *counter_));
            }
            --*counter_;
            emit_cca();
            if (*counter_ == 0) {
                ctx_.trace().emit(now, id(), "lbt_success", Detail{}.add("mode", "countdown"));
                secure(now);
                return;
            }
        } else {
            emit_cca();
            if (!frozen_) {
                frozen_ = true;
                ctx_.trace().emit(now, id(), "countdown_freeze", Detail{}.add("counter", *counter_));
            }
        }
        break;
    default: throw LbtError("CCA completed outside of LBT");
    }
    next_cca(now);
}

void LbtCell::secure(SimTime now) {
    PreambleLayout layout = build_preamble(now, grid_, params_.data_subframes, reserved_);
    ctx_.trace().emit(now, id(), "preamble",
                      Detail{}
                          .add("cts_start", layout.cts_start)
                          .add("cts_end", layout.cts_end)
                          .add("upbch_end", layout.upbch_end)
                          .add("crs", static_cast<std::int64_t>(layout.crs_symbols.size()))
                          .add("data_start", layout.burst_data_start)
                          .add("end", layout.burst_end)
                          .add("dur", layout.duration_field)
                          .add("slots", layout.data_slots)
                          .add("sf", static_cast<std::int64_t>(layout.secured_subframe))
                          .add("cell", params_.cell_id));
    phase_ = LbtPhase::PreambleTx;
    counter_.reset();
    frozen_ = false;
    current_ = layout;
    layouts_.push_back(layout);

    Burst cts;
    cts.tx_node = id();
    cts.start = layout.cts_start;
    cts.end = layout.cts_end;
    cts.kind = BurstKind::CtsToSelf;
    cts.duration_field = layout.duration_field;
    cts.intended_rx = id();
    ctx_.transmit(cts);
}

void LbtCell::on_tx_complete(const Burst& burst, BurstId) {
    const SimTime now = ctx_.now();
    switch (burst.kind) {
    case BurstKind::CtsToSelf: {
        Burst pre;
        pre.tx_node = id();
        pre.start = now;
        pre.end = current_->burst_data_start;
        pre.kind = BurstKind::LteuPreamble;
        ctx_.transmit(pre);
        break;
    }
    case BurstKind::LteuPreamble: {
        phase_ = LbtPhase::ActiveBurst;
        Burst data;
        data.tx_node = id();
        data.start = now;
        data.end = current_->burst_end;
        data.kind = BurstKind::LteuDataSubframes;
        data.payload_bits = lteu_data_bits(current_->data_slots, params_.bits_per_data_subframe);
        ctx_.transmit(data);
        break;
    }
    case BurstKind::LteuDataSubframes: on_burst_end(now); break;
    default: break;
    }
}

void LbtCell::on_burst_end(SimTime now) {
    lbt_subframe_ = current_->secured_subframe;
    --queued_;
    if (traffic_.full_buffer() && queued_ == 0) {
        queued_ = 1;
    }
    ctx_.trace().emit(now, id(), "burst_end", Detail{}.add("next_lbt_sf", static_cast<std::int64_t>(lbt_subframe_)));
    current_.reset();
    if (queued_ > 0) {
        schedule_lbt(now);
    } else {
        phase_ = LbtPhase::Idle;
    }
}

void LbtCell::on_rx_complete(const Burst& burst, BurstId, bool success) {
    if (!success || !wifi_decodable(burst.kind) || !burst.duration_field || burst.intended_rx == id()) {
        return;
    }
    const SimTime until = burst.end + *burst.duration_field;
    if (until > nav_until_) {
        nav_until_ = until;
        ctx_.trace().emit(ctx_.now(), id(), "nav", Detail{}.add("until", until));
    }
}

}  // namespace coexsim
