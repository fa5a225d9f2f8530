#include "coexsim/medium.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace coexsim;
using namespace coexsim::literals;

namespace {
Burst make(NodeId tx, SimTime start, SimTime end, BurstKind kind = BurstKind::WifiData, NodeId rx = kBroadcast) {
    Burst b;
    b.tx_node = tx;
    b.start = start;
    b.end = end;
    b.kind = kind;
    b.intended_rx = rx;
    return b;
}
}  // namespace

TEST_CASE("topology validation") {
    Topology t(3);
    t.set_energy(0, 1, true);
    t.set_decode(0, 1, true);
    CHECK_NOTHROW(t.validate());
    t.set_decode(1, 2, true);
    CHECK_THROWS_AS(t.validate(), MediumError);

    Topology d(2);
    d.set_energy(1, 1, true);
    CHECK_THROWS_AS(d.validate(), MediumError);

    const auto full = Topology::fully_connected(4);
    CHECK(full.energy(0, 3));
    CHECK(full.decode(3, 0));
    CHECK_FALSE(full.energy(2, 2));
}

TEST_CASE("begin_tx preconditions") {
    Medium m(Topology::fully_connected(2));
    CHECK_THROWS_AS(m.begin_tx(0, make(0, 0_us, 0_us), 0_us), MediumError);
    CHECK_THROWS_AS(m.begin_tx(0, make(0, 1_us, 5_us), 0_us), MediumError);
    CHECK_THROWS_AS(m.begin_tx(0, make(0, 0_us, 40_us, BurstKind::CtsToSelf), 0_us), MediumError);
    CHECK_NOTHROW(m.begin_tx(0, make(0, 0_us, 44_us, BurstKind::CtsToSelf), 0_us));
    CHECK_THROWS_AS(m.begin_tx(0, make(0, 0_us, 10_us), 0_us), MediumError);
    CHECK_THROWS_AS(m.end_tx(1, 0_us), MediumError);
    CHECK_THROWS_AS(m.end_tx(0, 43_us), MediumError);
}

TEST_CASE("sensing uses half-open intervals") {
    Medium m(Topology::fully_connected(2));
    m.begin_tx(0, make(0, 100_us, 200_us), 100_us);
    CHECK(m.busy_now(1, 100_us));
    CHECK_FALSE(m.busy_now(0, 150_us));
    m.end_tx(0, 200_us);
    CHECK_FALSE(m.busy_now(1, 200_us));
    CHECK(m.sense(1, 175_us, 25_us, 200_us).busy);
    CHECK_FALSE(m.sense(1, 200_us, 25_us, 225_us).busy);
    CHECK_FALSE(m.sense(1, 75_us, 25_us, 225_us).busy);
    CHECK(m.sense(1, 76_us, 25_us, 225_us).busy);
    CHECK_THROWS_AS(m.sense(1, 200_us, 25_us, 224_us), MediumError);
    const auto v = m.sense(1, 150_us, 25_us, 225_us);
    CHECK(v.busy == !v.cause.empty());
    CHECK(v.cause == std::vector<BurstId>{0});
}

TEST_CASE("overlap at a common receiver collides both frames") {
    // 0 and 2 are hidden from each other; both reach 1.
    Topology t(3);
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{2, 1}, std::pair{1, 2}}) {
        t.set_energy(a, b, true);
        t.set_decode(a, b, true);
    }
    Medium m(t);
    m.begin_tx(0, make(0, 0_us, 100_us, BurstKind::WifiData, 1), 0_us);
    CHECK_FALSE(m.busy_now(2, 10_us));
    m.begin_tx(2, make(2, 50_us, 150_us, BurstKind::WifiData, 1), 50_us);
    const auto d0 = m.end_tx(0, 100_us);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].rx == 1);
    CHECK(d0[0].intended);
    CHECK_FALSE(d0[0].success);
    const auto d2 = m.end_tx(2, 150_us);
    REQUIRE(d2.size() == 1);
    CHECK_FALSE(d2[0].success);
    CHECK(m.collided_at(0, 1));
    CHECK_FALSE(m.collided_at(0, 2));
}

TEST_CASE("a transmitter cannot receive while it sends") {
    Medium m(Topology::fully_connected(2));
    m.begin_tx(0, make(0, 0_us, 100_us, BurstKind::WifiData, 1), 0_us);
    m.begin_tx(1, make(1, 10_us, 50_us, BurstKind::WifiAck, 0), 10_us);
    const auto d1 = m.end_tx(1, 50_us);
    REQUIRE(d1.size() == 1);
    CHECK_FALSE(d1[0].success);
    const auto d0 = m.end_tx(0, 100_us);
    CHECK_FALSE(d0[0].success);
}

TEST_CASE("energy without decode: busy but no delivery") {
    Topology t(2);
    t.set_energy(0, 1, true);
    t.set_energy(1, 0, true);
    Medium m(t);
    m.begin_tx(0, make(0, 0_us, 100_us), 0_us);
    CHECK(m.busy_now(1, 50_us));
    CHECK(m.end_tx(0, 100_us).empty());
    CHECK(m.decodable_frames(1, 100_us).empty());
}

TEST_CASE("sense and collisions agree with a brute-force overlap scan") {
    constexpr int n = 5;
    std::mt19937_64 gen(7);
    Topology t(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b && gen() % 3 != 0) {
                t.set_energy(a, b, true);
                t.set_decode(a, b, gen() % 2 == 0);
            }
        }
    }
    Medium m(t);
    std::vector<Burst> all;
    std::vector<SimTime> free_at(n, 0_ns);
    SimTime now = 0_ns;
    // Drive the medium in time order, ending bursts before starting new ones.
    std::vector<std::pair<SimTime, NodeId>> ends;
    for (int i = 0; i < 400; ++i) {
        now += SimTime{static_cast<std::int64_t>(gen() % 30'000)};
        std::sort(ends.begin(), ends.end());
        while (!ends.empty() && ends.front().first <= now) {
            m.end_tx(ends.front().second, ends.front().first);
            ends.erase(ends.begin());
        }
        const auto node = static_cast<NodeId>(gen() % n);
        if (m.transmitting(node)) {
            continue;
        }
        const SimTime len{static_cast<std::int64_t>(1 + gen() % 200'000)};
        all.push_back(make(node, now, now + len));
        m.begin_tx(node, all.back(), now);
        ends.emplace_back(now + len, node);
    }
    std::sort(ends.begin(), ends.end());
    for (const auto& [t_end, node] : ends) {
        m.end_tx(node, t_end);
        now = std::max(now, t_end);
    }

    auto hears = [&](NodeId r, const Burst& b) { return r == b.tx_node || t.energy(b.tx_node, r); };
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (NodeId r = 0; r < n; ++r) {
            bool expect = false;
            for (std::size_t j = 0; j < all.size(); ++j) {
                if (j != i && r != all[i].tx_node && all[i].span().overlaps(all[j].span()) && hears(r, all[i]) &&
                    hears(r, all[j])) {
                    expect = true;
                }
            }
            REQUIRE(m.collided_at(i, r) == expect);
        }
    }
    for (int k = 0; k < 300; ++k) {
        const SimTime ws{static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(now.ns))};
        const SimTime len{static_cast<std::int64_t>(1 + gen() % 50'000)};
        const auto node = static_cast<NodeId>(gen() % n);
        std::vector<BurstId> expect;
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (all[j].tx_node != node && t.energy(all[j].tx_node, node) && all[j].span().overlaps({ws, ws + len})) {
                expect.push_back(j);
            }
        }
        const auto v = m.sense(node, ws, len, ws + len + now);
        REQUIRE(v.cause == expect);
    }
}
