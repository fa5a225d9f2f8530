#pragma once

#include "coexsim/time.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coexsim {

/// One line of the event trace: `time_ns,node,event,detail`.
/// `detail` is a `;`-separated list of `key=value` pairs with integer or
/// token values only.
struct TraceRecord {
    SimTime time;
    NodeId node = 0;
    std::string event;
    std::vector<std::pair<std::string, std::string>> detail;

    std::optional<std::string_view> get(std::string_view key) const;
    /// Integer field. Throws TraceError if absent or not an integer.
    std::int64_t integer(std::string_view key) const;
    std::optional<std::int64_t> maybe_integer(std::string_view key) const;

    std::string to_line() const;
};

class TraceError : public std::runtime_error {
public:
    TraceError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Builder for the detail list.
class Detail {
public:
    Detail& add(std::string key, std::int64_t v);
    Detail& add(std::string key, SimTime v) { return add(std::move(key), v.ns); }
    Detail& add(std::string key, std::string_view token);
    Detail& add(std::string key, const char* token) { return add(std::move(key), std::string_view{token}); }

    std::vector<std::pair<std::string, std::string>> take() { return std::move(items_); }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

/// Accumulates records and enforces non-decreasing time.
class TraceWriter {
public:
    void emit(SimTime time, NodeId node, std::string event, Detail detail = {});

    const std::vector<TraceRecord>& records() const { return records_; }
    std::string text() const;
    void write(std::ostream& os) const;

private:
    std::vector<TraceRecord> records_;
};

TraceRecord parse_trace_line(std::string_view line, std::size_t line_no);
std::vector<TraceRecord> parse_trace(std::string_view text);
std::vector<TraceRecord> read_trace_file(const std::string& path);

/// First line at which two traces differ, or nullopt if identical.
struct TraceDiff {
    std::size_t line = 0;  // 1-based
    std::string expected;
    std::string actual;
};
std::optional<TraceDiff> diff_traces(std::string_view expected, std::string_view actual);

}  // namespace coexsim
