#pragma once

#include "coexsim/simulation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace testsupport {

inline coexsim::RunResult run_yaml(std::string_view yaml, coexsim::RunOptions opts = {}) {
    return coexsim::run_scenario(coexsim::parse_scenario(yaml, "test"), opts);
}

inline std::vector<coexsim::TraceRecord> select(const coexsim::RunResult& r, std::string_view event,
                                                coexsim::NodeId node = -2) {
    std::vector<coexsim::TraceRecord> out;
    for (const auto& rec : r.trace) {
        if (rec.event == event && (node == -2 || rec.node == node)) {
            out.push_back(rec);
        }
    }
    return out;
}

}  // namespace testsupport
