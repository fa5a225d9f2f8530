#pragma once

#include "coexsim/medium.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/time.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace coexsim {

enum class TrafficKind : std::uint8_t { None, FullBuffer, Poisson, Script };

std::string_view to_string(TrafficKind kind);

struct TrafficModel {
    TrafficKind kind = TrafficKind::None;
    double rate_frames_per_s = 0.0;       // Poisson only
    std::int64_t wifi_frame_payload_bits = 12'000;
    std::vector<SimTime> arrivals;        // Script only, non-decreasing
};

/// Per-node arrival process. Full-buffer sources report an arrival "now"
/// whenever asked, which the owner uses to refill an emptied queue.
class TrafficSource {
public:
    TrafficSource(TrafficModel model, std::uint64_t seed);

    const TrafficModel& model() const { return model_; }
    bool full_buffer() const { return model_.kind == TrafficKind::FullBuffer; }

    /// Time of the first arrival event, if any.
    std::optional<SimTime> first_arrival();
    /// Next arrival after one that happened at `now`.
    std::optional<SimTime> next_arrival(SimTime now);

private:
    SimTime exponential_gap();

    TrafficModel model_;
    SplitMix64 rng_;
    std::size_t script_pos_ = 0;
};

/// Delivered-bit credit for LTE-u data: whole slots at half a subframe's bits each.
std::int64_t lteu_data_bits(std::int64_t data_slots, std::int64_t bits_per_data_subframe);

/// Bits credited for a finished burst. Control bursts and failed deliveries
/// earn nothing.
std::int64_t account_bits(const Burst& burst, bool delivered);

/// Airtime of a Wi-Fi data frame, rounded up to whole nanoseconds.
/// Rate is bits_num / bits_den bits per microsecond.
SimTime wifi_frame_airtime(std::int64_t payload_bits, std::int64_t bits_num, std::int64_t bits_den);

}  // namespace coexsim
