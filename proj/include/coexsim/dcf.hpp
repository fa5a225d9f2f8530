#pragma once

#include "coexsim/context.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/traffic.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>

namespace coexsim {

struct DcfParams {
    SimTime difs{34'000};
    SimTime sifs{16'000};
    SimTime backoff_slot{9'000};
    std::int64_t cw_len = 32;
    bool use_cts_to_self = false;
    SimTime ack_len{44'000};
    /// Data rate as a rational number of bits per microsecond.
    std::int64_t rate_bits_num = 54;
    std::int64_t rate_bits_den = 1;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Contention phases. Deferring covers both "waiting for the medium to go
/// idle" and a frozen backoff; WaitDifs is the idle DIFS sensing period.
enum class DcfPhase : std::uint8_t { Idle, WaitDifs, Backoff, Deferring, Transmitting, WaitAck };

std::string_view to_string(DcfPhase phase);

struct DcfState {
    DcfPhase phase = DcfPhase::Idle;
    std::optional<std::int64_t> counter;
    bool frozen = false;
    SimTime nav_until{0};
    std::size_t queued = 0;
};

struct WifiFrame {
    std::int64_t payload_bits = 0;
    NodeId dest = 0;
    SimTime arrived;
};

/// Wi-Fi station running CSMA/CA with a fixed contention window.
///
/// A frame that finds the medium idle waits one DIFS and goes out without
/// backoff. Otherwise the node waits for DIFS of idle medium, draws a backoff
/// (if it has none pending) and counts it down one slot at a time while the
/// medium stays idle. Any busy edge freezes the residual count until the next
/// DIFS of idle medium.
class DcfNode : public Station {
public:
    DcfNode(SimContext& ctx, NodeId id, DcfParams params, TrafficModel traffic, NodeId dest, std::uint64_t seed);

    void pin_draws(std::span<const std::int64_t> values) { draws_.pin(values); }

    void start() override;
    void on_channel_change() override;
    void on_rx_complete(const Burst& burst, BurstId id, bool success) override;
    void on_tx_complete(const Burst& burst, BurstId id) override;

    void on_frame_arrival(SimTime now);
    void on_channel_transition(bool now_busy, SimTime at);
    std::int64_t draw_backoff();
    /// Emits a 44 us CTS-to-self reserving `protect_len` after its end.
    Burst send_cts_to_self(SimTime protect_len);

    DcfState state() const;
    const DcfParams& params() const { return params_; }
    SimTime data_airtime() const;

private:
    bool self_busy() const;
    bool effective_busy(SimTime now) const;
    void arm_arrival(SimTime t);
    void enter_contention(SimTime now);
    void on_difs_end(SimTime now);
    void on_backoff_expiry(SimTime now);
    void begin_access(SimTime now);
    void send_data(SimTime now);
    void send_ack(SimTime now, NodeId to);
    void finish_frame(SimTime now, bool delivered);
    void set_nav(SimTime until);
    void cancel_timer();

    SimContext& ctx_;
    DcfParams params_;
    TrafficSource traffic_;
    DrawStream draws_;
    NodeId dest_;

    std::deque<WifiFrame> queue_;
    DcfPhase phase_ = DcfPhase::Idle;
    std::optional<std::int64_t> counter_;
    bool fast_path_ = false;
    SimTime countdown_since_{0};
    EventHandle timer_;
    EventHandle ack_timeout_;
    SimTime nav_until_{0};
    bool last_busy_ = false;
    bool ack_pending_ = false;
};

}  // namespace coexsim
