#include "coexsim/metrics.hpp"

#include "doctest.h"

#include <random>

using namespace coexsim;
using namespace coexsim::literals;

TEST_CASE("jain index") {
    const std::vector<double> equal{1, 1, 1, 1};
    CHECK(jain_index(equal).value() == doctest::Approx(1.0));
    const std::vector<double> monopoly{1, 0, 0, 0};
    CHECK(jain_index(monopoly).value() == doctest::Approx(0.25));
    const std::vector<double> zeros{0, 0, 0};
    CHECK_FALSE(jain_index(zeros).has_value());
    CHECK_FALSE(jain_index({}).has_value());

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> x(1 + gen() % 12);
        for (auto& v : x) {
            v = u(gen);
        }
        // Same figure written as mean^2 / mean of squares.
        double mean = 0.0;
        double mean_sq = 0.0;
        for (double v : x) {
            mean += v / static_cast<double>(x.size());
            mean_sq += v * v / static_cast<double>(x.size());
        }
        CHECK(jain_index(x).value() == doctest::Approx(mean * mean / mean_sq).epsilon(1e-12));
    }
}

TEST_CASE("union length agrees with a unit-grid sweep") {
    std::mt19937_64 gen(9);
    for (int k = 0; k < 100; ++k) {
        const std::int64_t horizon = 2'000;
        std::vector<Interval> spans;
        std::vector<bool> covered(static_cast<std::size_t>(horizon), false);
        for (int i = 0; i < 1 + static_cast<int>(gen() % 15); ++i) {
            const auto a = static_cast<std::int64_t>(gen() % 2'200);
            const auto b = a + 1 + static_cast<std::int64_t>(gen() % 400);
            spans.push_back({SimTime{a}, SimTime{b}});
            for (std::int64_t t = a; t < std::min(b, horizon); ++t) {
                covered[static_cast<std::size_t>(t)] = true;
            }
        }
        const auto expect = std::count(covered.begin(), covered.end(), true);
        CHECK(union_length(spans, SimTime{horizon}).ns == expect);
        std::shuffle(spans.begin(), spans.end(), gen);
        CHECK(union_length(spans, SimTime{horizon}).ns == expect);
    }
}

TEST_CASE("summarize") {
    SUBCASE("no transmissions") {
        const auto r = summarize({}, 3, 10_ms, std::vector<NodeId>{0, 1});
        CHECK(r.channel_busy_fraction == 0.0);
        CHECK(r.total_bits == 0);
        CHECK_FALSE(r.jain_fairness.has_value());
        for (const auto& n : r.nodes) {
            CHECK(n.airtime_ns == 0);
        }
    }
    SUBCASE("overlapping bursts count once in the busy fraction") {
        std::vector<BurstOutcome> out(2);
        out[0].burst.tx_node = 0;
        out[0].burst.start = 0_ms;
        out[0].burst.end = 4_ms;
        out[0].finished = true;
        out[1].burst.tx_node = 1;
        out[1].burst.start = 2_ms;
        out[1].burst.end = 6_ms;
        out[1].finished = true;
        const auto r = summarize(out, 2, 10_ms, std::vector<NodeId>{0, 1});
        CHECK(r.channel_busy_fraction == doctest::Approx(0.6));
        CHECK(r.nodes[0].airtime_ns == 4'000'000);
        CHECK(r.nodes[0].collided_bursts == 1);
        CHECK(r.jain_fairness.value() == doctest::Approx(1.0));
    }
    SUBCASE("airtime is clipped to the horizon") {
        std::vector<BurstOutcome> out(1);
        out[0].burst.tx_node = 0;
        out[0].burst.start = 8_ms;
        out[0].burst.end = 15_ms;
        const auto r = summarize(out, 1, 10_ms, std::vector<NodeId>{0});
        CHECK(r.nodes[0].airtime_ns == 2'000'000);
        CHECK(r.channel_busy_fraction == doctest::Approx(0.2));
    }
}

namespace {
// Hand-built trace of one cell: LBT, CTS at slot 1, preamble, data.
std::string canonical_burst(std::int64_t frame, std::int64_t data_end_offset = 10'000'000, std::int64_t cca_len = 25'000) {
    const auto t = [&](std::int64_t off) { return std::to_string(frame + off); };
    std::string s;
    s += t(475'000) + ",0,lbt_start,sf=0;reserved_start=" + t(0) + ";reserved_end=" + t(500'000) + ";cca=25000\n";
    s += t(500'000) + ",0,cca,start=" + t(500'000 - cca_len) + ";len=" + std::to_string(cca_len) + ";result=clear\n";
    s += t(500'000) + ",0,tx_start,kind=cts-to-self;id=0;end=" + t(544'000) + ";dur=9456000;rx=0\n";
    s += t(544'000) + ",0,tx_start,kind=lteu-preamble;id=1;end=" + t(1'000'000) + ";rx=-1\n";
    s += t(1'000'000) + ",0,tx_start,kind=lteu-data-subframes;id=2;end=" + t(data_end_offset) + ";rx=-1\n";
    return s;
}
}  // namespace

TEST_CASE("audit: canonical bursts pass with 9.5 ms occupancy and 0.5 ms idle") {
    const auto trace = parse_trace(canonical_burst(0) + canonical_burst(10'000'000));
    const auto rep = audit_compliance(trace);
    CHECK(rep.pass);
    REQUIRE(rep.bursts.size() == 2);
    CHECK(rep.bursts[0].occupancy == 9'500_us);
    REQUIRE(rep.cells.size() == 1);
    CHECK(rep.cells[0].min_inter_burst_idle == 500_us);
    CHECK(rep.cells[0].min_cca_window == 25_us);
    CHECK(rep.cells[0].pass_idle_5pct);
    CHECK(rep.cells[0].pass_reserved_slot);
}

TEST_CASE("audit: empty trace passes vacuously") {
    const auto rep = audit_compliance({});
    CHECK(rep.pass);
    CHECK(rep.violations == 0);
}

TEST_CASE("audit: an 11 ms burst fails occupancy") {
    const auto rep = audit_compliance(parse_trace(canonical_burst(0, 11'500'000)));
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.bursts.size() == 1);
    CHECK(rep.bursts[0].occupancy == 11_ms);
    CHECK_FALSE(rep.bursts[0].pass_cap);
    CHECK_FALSE(rep.bursts[0].pass_occupancy_range);
}

TEST_CASE("audit: 9.7 ms is inside [1, 10] ms but over the cap") {
    const auto rep = audit_compliance(parse_trace(canonical_burst(0, 10'200'000)));
    CHECK_FALSE(rep.pass);
    CHECK(rep.bursts[0].pass_occupancy_range);
    CHECK_FALSE(rep.bursts[0].pass_cap);
}

TEST_CASE("audit: short idle and short CCA windows fail") {
    // Second burst starts 400 us after the first ends.
    auto text = canonical_burst(0);
    text += "10400000,0,tx_start,kind=cts-to-self;id=3;end=10444000;dur=100;rx=0\n";
    text += "10444000,0,tx_start,kind=lteu-preamble;id=4;end=11000000;rx=-1\n";
    text += "11000000,0,tx_start,kind=lteu-data-subframes;id=5;end=12000000;rx=-1\n";
    auto rep = audit_compliance(parse_trace(text));
    CHECK_FALSE(rep.pass);
    CHECK(rep.cells[0].min_inter_burst_idle == 400_us);
    CHECK_FALSE(rep.cells[0].pass_idle_5pct);
    CHECK_FALSE(rep.cells[0].pass_idle_per_burst);

    rep = audit_compliance(parse_trace(canonical_burst(0, 10'000'000, 15'000)));
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.cells[0].pass_cca_min);
    CHECK(rep.cells[0].min_cca_window == 15_us);
}

TEST_CASE("audit: transmitting in the reserved slot fails") {
    std::string text = "400000,0,tx_start,kind=cts-to-self;id=0;end=444000;dur=100;rx=0\n";
    text += "444000,0,tx_start,kind=lteu-data-subframes;id=1;end=2000000;rx=-1\n";
    text += "10475000,0,lbt_start,sf=0;reserved_start=10000000;reserved_end=10500000;cca=25000\n";
    CHECK(audit_compliance(parse_trace(text)).pass);
    text = "0,0,lbt_start,sf=0;reserved_start=0;reserved_end=500000;cca=25000\n" + text;
    const auto rep = audit_compliance(parse_trace(text));
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.cells[0].pass_reserved_slot);
}

TEST_CASE("audit: malformed records report their line") {
    const auto text = canonical_burst(0) + "10475000,0,cca,start=10450000;result=clear\n";
    try {
        audit_compliance(parse_trace(text));
        FAIL("expected a TraceError");
    } catch (const TraceError& e) {
        CHECK(e.line() == 6);
    }
    CHECK_THROWS_AS(parse_trace("1,0,tx_start,kind=wifi-data\nbad line\n"), TraceError);
}

TEST_CASE("audit ignores Wi-Fi only traces") {
    const auto rep = audit_compliance(parse_trace("44000,2,tx_start,kind=wifi-data;id=0;end=20000000;rx=0\n"));
    CHECK(rep.pass);
    CHECK(rep.bursts.empty());
}
