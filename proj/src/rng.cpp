#include "coexsim/rng.hpp"

#include <stdexcept>
#include <string>

namespace coexsim {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    SplitMix64 mix(base ^ (tag * 0xD1B54A32D192ED03ULL));
    return mix.next();
}

std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_below: bound must be positive");
    }
    // Largest multiple of bound that fits; values above it are rejected.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
        const std::uint64_t v = rng.next();
        if (v <= limit) {
            return v % bound;
        }
    }
}

double uniform_unit(SplitMix64& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

namespace {
void check_window(std::int64_t cw_len) {
    if (cw_len < 1) {
        throw std::invalid_argument("contention window length must be >= 1, got " + std::to_string(cw_len));
    }
}
}  // namespace

std::int64_t DrawStream::draw_uniform(std::int64_t cw_len) {
    check_window(cw_len);
    ++draws_;
    if (!forced_.empty()) {
        const auto v = forced_.front();
        forced_.pop_front();
        if (v < 0 || v >= cw_len) {
            throw std::out_of_range("pinned draw " + std::to_string(v) + " outside [0, " + std::to_string(cw_len - 1) + "]");
        }
        return v;
    }
    return static_cast<std::int64_t>(uniform_below(rng_, static_cast<std::uint64_t>(cw_len)));
}

std::int64_t DrawStream::draw_modulo(std::int64_t cw_len) {
    check_window(cw_len);
    ++draws_;
    if (!forced_.empty()) {
        const auto v = forced_.front();
        forced_.pop_front();
        if (v < 0 || v >= cw_len) {
            throw std::out_of_range("pinned draw " + std::to_string(v) + " outside [0, " + std::to_string(cw_len - 1) + "]");
        }
        return v;
    }
    return static_cast<std::int64_t>(rng_.next() % static_cast<std::uint64_t>(cw_len));
}

}  // namespace coexsim
