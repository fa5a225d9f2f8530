#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace coexsim {

/// Virtual time in integer nanoseconds. Never constructed from floating point.
struct SimTime {
    std::int64_t ns = 0;

    constexpr SimTime() = default;
    constexpr explicit SimTime(std::int64_t v) : ns(v) {}

    friend constexpr auto operator<=>(SimTime, SimTime) = default;

    friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ns + b.ns}; }
    friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ns - b.ns}; }
    friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return SimTime{a.ns * k}; }
    friend constexpr SimTime operator*(std::int64_t k, SimTime a) { return SimTime{a.ns * k}; }
    /// Whole multiples of `b` contained in `a` (floor for non-negative operands).
    friend constexpr std::int64_t operator/(SimTime a, SimTime b) { return a.ns / b.ns; }
    friend constexpr SimTime operator%(SimTime a, SimTime b) { return SimTime{a.ns % b.ns}; }

    constexpr SimTime& operator+=(SimTime o) {
        ns += o.ns;
        return *this;
    }
    constexpr SimTime& operator-=(SimTime o) {
        ns -= o.ns;
        return *this;
    }

    friend std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.ns << "ns"; }
};

constexpr SimTime nanoseconds(std::int64_t v) { return SimTime{v}; }
constexpr SimTime microseconds(std::int64_t v) { return SimTime{v * 1'000}; }
constexpr SimTime milliseconds(std::int64_t v) { return SimTime{v * 1'000'000}; }

namespace literals {
constexpr SimTime operator""_ns(unsigned long long v) { return SimTime{static_cast<std::int64_t>(v)}; }
constexpr SimTime operator""_us(unsigned long long v) { return microseconds(static_cast<std::int64_t>(v)); }
constexpr SimTime operator""_ms(unsigned long long v) { return milliseconds(static_cast<std::int64_t>(v)); }
}  // namespace literals

/// Half-open interval [begin, end).
struct Interval {
    SimTime begin;
    SimTime end;

    constexpr SimTime length() const { return end - begin; }
    constexpr bool contains(SimTime t) const { return begin <= t && t < end; }
    constexpr bool overlaps(const Interval& o) const { return begin < o.end && o.begin < end; }
    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

using NodeId = std::int32_t;
inline constexpr NodeId kBroadcast = -1;

}  // namespace coexsim
