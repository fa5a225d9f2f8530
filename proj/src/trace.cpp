#include "coexsim/trace.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace coexsim {

namespace {

bool valid_token(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c == ',' || c == ';' || c == '=' || c == '\n' || c == '\r' || c == ' ' || c == '.') {
            return false;
        }
    }
    return true;
}

std::optional<std::int64_t> to_int(std::string_view s) {
    std::int64_t v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        auto next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

}  // namespace

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}

std::optional<std::string_view> TraceRecord::get(std::string_view key) const {
    for (const auto& [k, v] : detail) {
        if (k == key) {
            return std::string_view{v};
        }
    }
    return std::nullopt;
}

std::optional<std::int64_t> TraceRecord::maybe_integer(std::string_view key) const {
    auto v = get(key);
    if (!v) {
        return std::nullopt;
    }
    return to_int(*v);
}

std::int64_t TraceRecord::integer(std::string_view key) const {
    auto v = maybe_integer(key);
    if (!v) {
        throw TraceError(0, "record '" + event + "' lacks integer field '" + std::string(key) + "'");
    }
    return *v;
}

std::string TraceRecord::to_line() const {
    std::string out = std::to_string(time.ns);
    out += ',';
    out += std::to_string(node);
    out += ',';
    out += event;
    out += ',';
    for (std::size_t i = 0; i < detail.size(); ++i) {
        if (i) {
            out += ';';
        }
        out += detail[i].first;
        out += '=';
        out += detail[i].second;
    }
    return out;
}

namespace {
void require_key(const std::string& key) {
    if (!valid_token(key)) {
        throw std::invalid_argument("invalid trace key '" + key + "'");
    }
}
}  // namespace

Detail& Detail::add(std::string key, std::int64_t v) {
    require_key(key);
    items_.emplace_back(std::move(key), std::to_string(v));
    return *this;
}

Detail& Detail::add(std::string key, std::string_view token) {
    require_key(key);
    if (!valid_token(token)) {
        throw std::invalid_argument("invalid trace token '" + std::string(token) + "'");
    }
    items_.emplace_back(std::move(key), std::string(token));
    return *this;
}

void TraceWriter::emit(SimTime time, NodeId node, std::string event, Detail detail) {
    if (!records_.empty() && time < records_.back().time) {
        throw std::logic_error("trace record out of time order at " + std::to_string(time.ns) + "ns");
    }
    records_.push_back(TraceRecord{time, node, std::move(event), detail.take()});
}

void TraceWriter::write(std::ostream& os) const {
    for (const auto& r : records_) {
        os << r.to_line() << '\n';
    }
}

std::string TraceWriter::text() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

TraceRecord parse_trace_line(std::string_view line, std::size_t line_no) {
    auto fields = split(line, ',');
    if (fields.size() != 4) {
        throw TraceError(line_no, "expected 4 comma-separated fields, got " + std::to_string(fields.size()));
    }
    TraceRecord rec;
    auto t = to_int(fields[0]);
    if (!t || *t < 0) {
        throw TraceError(line_no, "time_ns is not a non-negative integer");
    }
    auto n = to_int(fields[1]);
    if (!n) {
        throw TraceError(line_no, "node is not an integer");
    }
    if (!valid_token(fields[2])) {
        throw TraceError(line_no, "invalid event name");
    }
    rec.time = SimTime{*t};
    rec.node = static_cast<NodeId>(*n);
    rec.event = std::string(fields[2]);
    if (!fields[3].empty()) {
        for (auto kv : split(fields[3], ';')) {
            auto eq = kv.find('=');
            if (eq == std::string_view::npos) {
                throw TraceError(line_no, "detail item '" + std::string(kv) + "' is not key=value");
            }
            auto key = kv.substr(0, eq);
            auto val = kv.substr(eq + 1);
            if (!valid_token(key) || !valid_token(val)) {
                throw TraceError(line_no, "malformed detail item '" + std::string(kv) + "'");
            }
            rec.detail.emplace_back(std::string(key), std::string(val));
        }
    }
    return rec;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
    std::vector<TraceRecord> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        auto rec = parse_trace_line(line, line_no);
        if (!out.empty() && rec.time < out.back().time) {
            throw TraceError(line_no, "records out of time order");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open trace file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_trace(ss.str());
}

std::optional<TraceDiff> diff_traces(std::string_view expected, std::string_view actual) {
    auto a = split(expected, '\n');
    auto b = split(actual, '\n');
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::string_view x = i < a.size() ? a[i] : std::string_view{"<end of trace>"};
        std::string_view y = i < b.size() ? b[i] : std::string_view{"<end of trace>"};
        if (x != y) {
            return TraceDiff{i + 1, std::string(x), std::string(y)};
        }
    }
    return std::nullopt;
}

}  // namespace coexsim
