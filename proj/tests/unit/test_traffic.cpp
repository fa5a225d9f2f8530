#include "coexsim/traffic.hpp"

#include "doctest.h"

#include <cmath>

using namespace coexsim;
using namespace coexsim::literals;

TEST_CASE("full buffer arrives at zero and refills immediately") {
    TrafficSource s(TrafficModel{TrafficKind::FullBuffer}, 1);
    CHECK(s.first_arrival() == 0_ns);
    CHECK(s.next_arrival(5_us) == 5_us);
    CHECK(s.full_buffer());
}

TEST_CASE("no traffic") {
    TrafficSource s(TrafficModel{}, 1);
    CHECK_FALSE(s.first_arrival().has_value());
}

TEST_CASE("script replays its arrivals in order") {
    TrafficModel m;
    m.kind = TrafficKind::Script;
    m.arrivals = {10_us, 200_us, 200_us};
    TrafficSource s(m, 1);
    CHECK(s.first_arrival() == 10_us);
    CHECK(s.next_arrival(10_us) == 200_us);
    CHECK(s.next_arrival(200_us) == 200_us);
    CHECK_FALSE(s.next_arrival(200_us).has_value());
}

TEST_CASE("poisson arrival count within three sigma") {
    TrafficModel m;
    m.kind = TrafficKind::Poisson;
    m.rate_frames_per_s = 2000.0;
    const SimTime horizon = 10'000_ms;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        TrafficSource s(m, seed);
        std::int64_t count = 0;
        auto t = s.first_arrival();
        while (t && *t <= horizon) {
            ++count;
            t = s.next_arrival(*t);
        }
        const double mean = m.rate_frames_per_s * 10.0;
        CHECK(std::abs(static_cast<double>(count) - mean) <= 3.0 * std::sqrt(mean));
    }
    m.rate_frames_per_s = 0.0;
    CHECK_THROWS_AS(TrafficSource(m, 1), std::invalid_argument);
}

TEST_CASE("airtime and bit accounting") {
    CHECK(wifi_frame_airtime(10'800, 54, 1) == 200_us);
    // 12000 / 54 us = 222.2 us, rounded up to the nanosecond.
    CHECK(wifi_frame_airtime(12'000, 54, 1) == SimTime{222'223});
    CHECK(wifi_frame_airtime(1'000, 13, 2) == SimTime{153'847});

    CHECK(lteu_data_bits(18, 100'000) == 900'000);
    CHECK(lteu_data_bits(17, 100'000) == 850'000);

    Burst data;
    data.kind = BurstKind::WifiData;
    data.payload_bits = 12'000;
    CHECK(account_bits(data, true) == 12'000);
    CHECK(account_bits(data, false) == 0);
    Burst ack;
    ack.kind = BurstKind::WifiAck;
    ack.payload_bits = 100;
    CHECK(account_bits(ack, true) == 0);
}
