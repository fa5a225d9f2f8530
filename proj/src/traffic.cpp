#include "coexsim/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace coexsim {

std::string_view to_string(TrafficKind kind) {
    switch (kind) {
    case TrafficKind::None: return "none";
    case TrafficKind::FullBuffer: return "full-buffer";
    case TrafficKind::Poisson: return "poisson";
    case TrafficKind::Script: return "script";
    }
    return "unknown";
}

TrafficSource::TrafficSource(TrafficModel model, std::uint64_t seed) : model_(std::move(model)), rng_(seed) {
    if (model_.kind == TrafficKind::Poisson && !(model_.rate_frames_per_s > 0.0)) {
        throw std::invalid_argument("poisson traffic needs a positive rate");
    }
}

SimTime TrafficSource::exponential_gap() {
    const double u = uniform_unit(rng_);
    const double seconds = -std::log1p(-u) / model_.rate_frames_per_s;
    const auto ns = static_cast<std::int64_t>(std::ceil(seconds * 1e9));
    return SimTime{std::max<std::int64_t>(ns, 1)};
}

std::optional<SimTime> TrafficSource::first_arrival() {
    switch (model_.kind) {
    case TrafficKind::None: return std::nullopt;
    case TrafficKind::FullBuffer: return SimTime{0};
    case TrafficKind::Poisson: return exponential_gap();
    case TrafficKind::Script:
        if (script_pos_ < model_.arrivals.size()) {
            return model_.arrivals[script_pos_++];
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<SimTime> TrafficSource::next_arrival(SimTime now) {
    switch (model_.kind) {
    case TrafficKind::None: return std::nullopt;
    case TrafficKind::FullBuffer: return now;
    case TrafficKind::Poisson: return now + exponential_gap();
    case TrafficKind::Script:
        if (script_pos_ < model_.arrivals.size()) {
            return std::max(now, model_.arrivals[script_pos_++]);
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::int64_t lteu_data_bits(std::int64_t data_slots, std::int64_t bits_per_data_subframe) {
    return data_slots * bits_per_data_subframe / 2;
}

std::int64_t account_bits(const Burst& burst, bool delivered) {
    if (!delivered) {
        return 0;
    }
    switch (burst.kind) {
    case BurstKind::WifiData:
    case BurstKind::LteuDataSubframes: return burst.payload_bits;
    default: return 0;
    }
}

SimTime wifi_frame_airtime(std::int64_t payload_bits, std::int64_t bits_num, std::int64_t bits_den) {
    if (bits_num <= 0 || bits_den <= 0) {
        throw std::invalid_argument("data rate must be positive");
    }
    // payload / (num/den) microseconds = payload * den * 1000 / num ns.
    const std::int64_t scaled = payload_bits * bits_den * 1000;
    return SimTime{(scaled + bits_num - 1) / bits_num};
}

}  // namespace coexsim
