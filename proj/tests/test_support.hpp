#pragma once

#include "oracles/brute_force.hpp"
#include "ringelect/config.hpp"
#include "ringelect/scenarios.hpp"
#include "ringelect/simulator.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

inline ringelect::RingConfig ring(std::vector<std::uint64_t> names, std::vector<long> tick, std::vector<long> delay,
                                  std::vector<std::pair<std::size_t, long>> wake,
                                  ringelect::DelayPolicy policy = ringelect::Power2{})
{
    ringelect::RingConfig c;
    for (auto n : names) {
        c.names.emplace_back(n);
    }
    for (auto t : tick) {
        c.tick_len.emplace_back(t);
    }
    for (auto d : delay) {
        c.link_delay.emplace_back(d);
    }
    for (auto [p, t] : wake) {
        c.wake.push_back({p, t});
    }
    c.policy = std::move(policy);
    return c;
}

inline ringelect::RingConfig lockstep(std::vector<std::uint64_t> names, long delta = 0,
                                      ringelect::DelayPolicy policy = ringelect::Power2{})
{
    const std::size_t n = names.size();
    std::vector<std::pair<std::size_t, long>> wake;
    for (std::size_t p = 0; p < n; ++p) {
        wake.emplace_back(p, 0);
    }
    return ring(std::move(names), std::vector<long>(n, 1), std::vector<long>(n, delta), wake, std::move(policy));
}

inline oracle::Ring to_oracle(const ringelect::RingConfig& c, bool filter = false)
{
    oracle::Ring r;
    for (auto n : c.names) {
        r.names.push_back(n.value);
    }
    for (const auto& t : c.tick_len) {
        r.tick_len.push_back(static_cast<std::int64_t>(t));
    }
    for (const auto& d : c.link_delay) {
        r.link_delay.push_back(static_cast<std::int64_t>(d));
    }
    for (const auto& w : c.wake) {
        r.wake.emplace_back(w.pos, static_cast<std::int64_t>(w.time));
    }
    if (filter) {
        r.hold = oracle::Hold::Filter;
    } else if (std::holds_alternative<ringelect::Relative>(c.policy)) {
        r.hold = oracle::Hold::Relative;
    } else {
        r.hold = oracle::Hold::Power2;
    }
    return r;
}

struct TraceLine {
    long long time;
    std::string kind;
    std::size_t pos;
    std::string detail;
};

inline TraceLine parse_trace_line(const std::string& line)
{
    TraceLine t;
    std::istringstream in(line);
    std::string field;
    while (in >> field) {
        const auto eq = field.find('=');
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "time") {
            t.time = std::stoll(value);
        } else if (key == "kind") {
            t.kind = value;
        } else if (key == "pos") {
            t.pos = std::stoul(value);
        } else if (key == "detail") {
            t.detail = value;
        }
    }
    return t;
}

inline std::vector<TraceLine> parse_trace(const std::vector<std::string>& lines)
{
    std::vector<TraceLine> out;
    for (const auto& l : lines) {
        out.push_back(parse_trace_line(l));
    }
    return out;
}

}  // namespace testing_support
