#pragma once

#include "coexsim/context.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/traffic.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace coexsim {

/// Network-wide LTE timing: 10 ms frames of ten 1 ms subframes, two 0.5 ms
/// slots per subframe and seven OFDM symbols per slot. Frame 0 starts at t=0.
struct FrameGrid {
    static constexpr SimTime frame_len{10'000'000};
    static constexpr SimTime subframe_len{1'000'000};
    static constexpr SimTime slot_len{500'000};
    static constexpr int subframes_per_frame = 10;
    static constexpr int symbols_per_slot = 7;

    /// End offset of symbol k (k = 1..7) within a slot: round(slot_len * k / 7).
    /// Index 0 holds 0 so the array lists every boundary of one slot.
    std::array<SimTime, symbols_per_slot + 1> symbol_offsets;

    FrameGrid();

    static SimTime frame_start(SimTime t) { return SimTime{t.ns - t.ns % frame_len.ns}; }
    static SimTime subframe_start(SimTime t) { return SimTime{t.ns - t.ns % subframe_len.ns}; }
    static SimTime slot_start(SimTime t) { return SimTime{t.ns - t.ns % slot_len.ns}; }
    static int subframe_index(SimTime t) { return static_cast<int>((t.ns / subframe_len.ns) % subframes_per_frame); }

    /// First symbol boundary >= t.
    SimTime symbol_boundary_at_or_after(SimTime t) const;
    /// First symbol boundary > t.
    SimTime symbol_boundary_after(SimTime t) const;
    bool on_symbol_boundary(SimTime t) const;
    /// Grid symbols exactly tiling [from, to); both ends must be boundaries.
    std::vector<Interval> symbols_between(SimTime from, SimTime to) const;
};

class LbtError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct LteuParams {
    SimTime cca_unit{25'000};
    std::int64_t cw_len = 32;
    std::int64_t cell_id = 0;
    std::uint64_t seed = 0;
    std::int64_t bits_per_data_subframe = 0;
    int data_subframes = 9;
    int crs_ports = 4;
    int lbt_subframe = 0;

    /// Longest permitted burst: data subframes plus one slot of preamble.
    SimTime max_occupancy() const { return FrameGrid::subframe_len * data_subframes + FrameGrid::slot_len; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

inline constexpr SimTime kMinCcaObservation{20'000};

/// Start of the LBT window for the given LBT subframe of the frame starting
/// at `frame_start`: one CCA unit before slot 1 of that subframe.
SimTime lbt_window_start(const FrameGrid& grid, int lbt_subframe_index, SimTime cca_unit, SimTime frame_start = SimTime{0});

/// Earliest LBT window start >= t.
SimTime next_lbt_window(const FrameGrid& grid, int lbt_subframe_index, SimTime cca_unit, SimTime t);

struct PreambleLayout {
    SimTime cts_start;
    SimTime cts_end;
    SimTime upbch_start;
    SimTime upbch_end;
    std::vector<Interval> crs_symbols;
    SimTime burst_data_start;
    SimTime burst_end;
    SimTime duration_field;
    std::int64_t data_slots = 0;
    /// Subframe index (0..9) in which the channel was secured.
    int secured_subframe = 0;
    /// Preamble had to run to the end of the first slot of the next subframe.
    bool slot_aligned = false;

    SimTime occupancy() const { return burst_end - cts_start; }
};

/// Lays out CTS-to-self, uPBCH (with extended CP up to the next full grid
/// symbol), CRS fill and data for an LBT success at `success_time`.
///
/// Data starts at the next subframe boundary when CTS plus one full symbol fit
/// before it, otherwise at the end of the first slot of that subframe. Data
/// then runs for `data_subframes` subframes, shortened by whole slots if that
/// would push occupancy past LteuParams::max_occupancy().
///
/// Throws LbtError if `success_time` falls inside `reserved`.
PreambleLayout build_preamble(SimTime success_time, const FrameGrid& grid, int data_subframes = 9,
                              std::optional<Interval> reserved = std::nullopt);

/// Countdown generator: SplitMix64 seeded with seed XOR cell_id, output mod cw_len.
class CountdownSource {
public:
    CountdownSource(std::uint64_t seed, std::int64_t cell_id) : draws_(seed ^ static_cast<std::uint64_t>(cell_id)) {}

    void pin(std::span<const std::int64_t> values) { draws_.pin(values); }
    std::int64_t draw_countdown(std::int64_t cw_len = 32) { return draws_.draw_modulo(cw_len); }

private:
    DrawStream draws_;
};

enum class LbtPhase : std::uint8_t { Idle, WaitLbtWindow, InitialCca, ContinuousCca, Countdown, PreambleTx, ActiveBurst };

std::string_view to_string(LbtPhase phase);

struct LbtState {
    LbtPhase phase = LbtPhase::Idle;
    std::optional<std::int64_t> remaining;
    bool frozen = false;
    int lbt_subframe_index = 0;
    std::optional<SimTime> active_until;
};

/// Frame-based LTE-u cell: periodic LBT window, CCA countdown, preamble and
/// nine-subframe burst, then back to LBT in the subframe where the channel was
/// last secured.
class LbtCell : public Station {
public:
    LbtCell(SimContext& ctx, NodeId id, LteuParams params, TrafficModel traffic, std::uint64_t traffic_seed);

    void pin_draws(std::span<const std::int64_t> values) { countdown_.pin(values); }

    void start() override;
    void on_rx_complete(const Burst& burst, BurstId id, bool success) override;
    void on_tx_complete(const Burst& burst, BurstId id) override;

    void on_data_arrival(SimTime now);

    LbtState state() const;
    const LteuParams& params() const { return params_; }
    const std::vector<PreambleLayout>& layouts() const { return layouts_; }
    SimTime nav_until() const { return nav_until_; }

private:
    void arm_arrival(SimTime t);
    void schedule_lbt(SimTime from);
    void begin_lbt(SimTime window_start);
    void on_cca_end(SimTime now);
    void secure(SimTime now);
    void on_burst_end(SimTime now);
    void next_cca(SimTime now);

    SimContext& ctx_;
    LteuParams params_;
    FrameGrid grid_;
    TrafficSource traffic_;
    CountdownSource countdown_;

    LbtPhase phase_ = LbtPhase::Idle;
    std::optional<std::int64_t> counter_;
    bool frozen_ = false;
    int lbt_subframe_;
    std::int64_t queued_ = 0;
    SimTime nav_until_{0};
    Interval reserved_{};
    std::optional<PreambleLayout> current_;
    std::vector<PreambleLayout> layouts_;
};

}  // namespace coexsim
