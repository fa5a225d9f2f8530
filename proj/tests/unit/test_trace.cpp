#include "coexsim/trace.hpp"

#include "doctest.h"

using namespace coexsim;
using namespace coexsim::literals;

TEST_CASE("records round-trip through text") {
    TraceWriter w;
    w.emit(44_us, 2, "tx_start", Detail{}.add("kind", "wifi-data").add("end", 244_us).add("rx", std::int64_t{-1}));
    w.emit(44_us, 0, "arrival");
    w.emit(50_us, 1, "freeze", Detail{}.add("counter", std::int64_t{4}));
    const auto text = w.text();
    CHECK(text == "44000,2,tx_start,kind=wifi-data;end=244000;rx=-1\n44000,0,arrival,\n50000,1,freeze,counter=4\n");
    const auto back = parse_trace(text);
    REQUIRE(back.size() == 3);
    CHECK(back[0].integer("end") == 244'000);
    CHECK(back[0].get("kind") == std::optional<std::string_view>{"wifi-data"});
    CHECK(back[1].detail.empty());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].to_line() == w.records()[i].to_line());
    }
}

TEST_CASE("emitter enforces time order and token rules") {
    TraceWriter w;
    w.emit(10_us, 0, "a");
    CHECK_THROWS(w.emit(9_us, 0, "b"));
    CHECK_THROWS(Detail{}.add("kind", "two words"));
    CHECK_THROWS(Detail{}.add("k;v", std::int64_t{1}));
    CHECK_THROWS(Detail{}.add("x", "0.5"));
}

TEST_CASE("parse errors carry the line number") {
    auto line_of = [](std::string_view text) -> std::size_t {
        try {
            parse_trace(text);
        } catch (const TraceError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("1,0,a,\n2,0,b,x=1\n3,0,c\n") == 3);
    CHECK(line_of("1,0,a,\n-5,0,b,\n") == 2);
    CHECK(line_of("1,0,a,\nx,0,b,\n") == 2);
    CHECK(line_of("1,0,a,k\n") == 1);
    CHECK(line_of("5,0,a,\n4,0,b,\n") == 2);
    CHECK(line_of("1,0,a,\n2,0,b,k=v\n") == 0);
}

TEST_CASE("integer accessors") {
    const auto r = parse_trace_line("7,1,cca,result=clear;len=25000", 1);
    CHECK(r.integer("len") == 25'000);
    CHECK_FALSE(r.maybe_integer("result").has_value());
    CHECK_THROWS_AS(r.integer("result"), TraceError);
    CHECK_THROWS_AS(r.integer("missing"), TraceError);
}

TEST_CASE("diff reports the first differing line") {
    CHECK_FALSE(diff_traces("1,0,a,\n2,0,b,\n", "1,0,a,\n2,0,b,\n").has_value());
    const auto d = diff_traces("1,0,a,\n2,0,b,\n3,0,c,\n", "1,0,a,\n2,0,x,\n3,0,c,\n");
    REQUIRE(d.has_value());
    CHECK(d->line == 2);
    CHECK(d->expected == "2,0,b,");
    CHECK(d->actual == "2,0,x,");
    const auto shorter = diff_traces("1,0,a,\n2,0,b,\n", "1,0,a,\n");
    REQUIRE(shorter.has_value());
    CHECK(shorter->line == 2);
    CHECK(shorter->actual.empty());
}
