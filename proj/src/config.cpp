#include "ringelect/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ringelect {

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += "; ";
        }
        out += item;
    }
    return out;
}

std::vector<std::string> structural_violations(const RingConfig& config)
{
    std::vector<std::string> v;
    const std::size_t n = config.size();
    if (n < 2) {
        v.push_back("ring needs at least 2 processors, got " + std::to_string(n));
    }
    if (config.tick_len.size() != n) {
        v.push_back("tick_len has " + std::to_string(config.tick_len.size()) + " entries, expected " +
                    std::to_string(n));
    }
    if (config.link_delay.size() != n) {
        v.push_back("link_delay has " + std::to_string(config.link_delay.size()) + " entries, expected " +
                    std::to_string(n));
    }
    for (std::size_t p = 0; p < config.tick_len.size(); ++p) {
        if (config.tick_len[p] < 1) {
            v.push_back("tick_len[" + std::to_string(p) + "] must be positive");
        }
    }
    for (std::size_t p = 0; p < config.link_delay.size(); ++p) {
        if (config.link_delay[p] < 0) {
            v.push_back("link_delay[" + std::to_string(p) + "] must be non-negative");
        }
    }
    return v;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid ring config: " + join(violations)), violations_(std::move(violations))
{
}

Name RingConfig::min_name() const
{
    if (names.empty()) {
        throw ConfigError({"empty name list"});
    }
    return *std::min_element(names.begin(), names.end());
}

DerivedParams derive_params(const RingConfig& config)
{
    if (auto v = structural_violations(config); !v.empty()) {
        throw ConfigError(std::move(v));
    }
    DerivedParams d;
    d.m = *std::min_element(config.tick_len.begin(), config.tick_len.end());
    d.u_clock = *std::max_element(config.tick_len.begin(), config.tick_len.end());
    d.u = d.u_clock + *std::max_element(config.link_delay.begin(), config.link_delay.end());
    d.s = ceil_div(d.u, d.m);
    d.epsilon = d.u_clock - d.m;
    for (const auto& t : config.tick_len) {
        d.w_p += t;
    }
    for (const auto& l : config.link_delay) {
        d.w_s += l;
    }
    d.w = d.w_p + d.w_s;
    return d;
}

std::vector<std::string> validate_config(const RingConfig& config, const std::optional<BigInt>& declared_s)
{
    std::vector<std::string> v = structural_violations(config);

    std::set<Name> seen;
    for (Name n : config.names) {
        if (n.value == 0) {
            v.push_back("names must be positive integers");
        }
        if (!seen.insert(n).second) {
            std::ostringstream os;
            os << "duplicate name " << n;
            v.push_back(os.str());
        }
    }
    if (config.wake.empty()) {
        v.push_back("at least one spontaneous wake entry is required");
    }
    for (const auto& w : config.wake) {
        if (w.pos >= config.size()) {
            v.push_back("wake position " + std::to_string(w.pos) + " is outside the ring");
        }
        if (w.time < 0) {
            v.push_back("wake time must be non-negative");
        }
    }
    if (!config.names.empty()) {
        auto pv = validate_policy(config.policy, config.names);
        v.insert(v.end(), pv.begin(), pv.end());
    }

    if (declared_s && v.empty()) {
        const DerivedParams d = derive_params(config);
        if (d.s > *declared_s) {
            std::ostringstream os;
            os << "asynchronicity s = ceil(u/m) = ceil(" << d.u << "/" << d.m << ") = " << d.s
               << " exceeds the declared bound " << *declared_s;
            v.push_back(os.str());
        }
    }
    return v;
}

void require_valid(const RingConfig& config, const std::optional<BigInt>& declared_s)
{
    if (auto v = validate_config(config, declared_s); !v.empty()) {
        throw ConfigError(std::move(v));
    }
}

bool is_lockstep(const RingConfig& config)
{
    if (config.tick_len.empty() || config.link_delay.empty()) {
        return false;
    }
    return std::all_of(config.tick_len.begin(), config.tick_len.end(), [](const BigInt& t) { return t == 1; }) &&
           std::all_of(config.link_delay.begin(), config.link_delay.end(),
                       [&](const BigInt& d) { return d == config.link_delay.front(); });
}

}  // namespace ringelect
