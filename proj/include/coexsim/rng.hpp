#pragma once

#include <cstdint>
#include <deque>
#include <span>

namespace coexsim {

/// 64-bit SplitMix generator. The constants are fixed so that traces are
/// reproducible across implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a small tag.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);

/// Uniform integer in [0, bound) by rejection sampling (no modulo bias).
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound);

/// Uniform real in [0, 1) built from the top 53 bits.
double uniform_unit(SplitMix64& rng);

/// Random draws with an optional prefix of pinned values, consumed first.
/// Pinned values let scenarios replay a documented timeline exactly.
class DrawStream {
public:
    explicit DrawStream(std::uint64_t seed) : rng_(seed) {}

    void pin(std::span<const std::int64_t> values) { forced_.insert(forced_.end(), values.begin(), values.end()); }

    /// Backoff-style draw in [0, cw_len). Throws std::invalid_argument if cw_len == 0.
    std::int64_t draw_uniform(std::int64_t cw_len);

    /// Countdown draw: raw generator output reduced modulo cw_len.
    std::int64_t draw_modulo(std::int64_t cw_len);

    std::uint64_t draws() const { return draws_; }
    SplitMix64& generator() { return rng_; }

private:
    SplitMix64 rng_;
    std::deque<std::int64_t> forced_;
    std::uint64_t draws_ = 0;
};

}  // namespace coexsim
