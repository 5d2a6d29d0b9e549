#pragma once

#include "ringelect/message.hpp"
#include "ringelect/numeric.hpp"
#include "ringelect/protocol.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringelect {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct WakeEntry {
    std::size_t pos = 0;
    BigInt time = 0;

    friend bool operator==(const WakeEntry&, const WakeEntry&) = default;
};

/// A ring of N processors listed clockwise. Processor p sends to p+1 (mod N)
/// over link p.
struct RingConfig {
    std::vector<Name> names;
    std::vector<BigInt> tick_len;    // absolute units per local time unit
    std::vector<BigInt> link_delay;  // absolute units, constant per link
    std::vector<WakeEntry> wake;     // spontaneous wake events
    DelayPolicy policy = Power2{};

    std::size_t size() const noexcept { return names.size(); }
    Name min_name() const;
};

struct DerivedParams {
    BigInt m;        // shortest local time unit
    BigInt u_clock;  // longest local time unit (u')
    BigInt u;        // u' plus the largest link delay
    BigInt s;        // ceil(u / m), the asynchronicity factor
    BigInt epsilon;  // u' - m
    BigInt w_p;      // sum of tick lengths
    BigInt w_s;      // sum of link delays
    BigInt w;        // walk time, w_p + w_s

    friend bool operator==(const DerivedParams&, const DerivedParams&) = default;
};

/// Throws ConfigError if the arrays are empty or of unequal length, or a tick
/// length is not positive.
DerivedParams derive_params(const RingConfig& config);

/// All structural and policy violations; when `declared_s` is given, also
/// whether the derived asynchronicity factor keeps within it.
std::vector<std::string> validate_config(const RingConfig& config,
                                         const std::optional<BigInt>& declared_s = std::nullopt);

/// Throws ConfigError carrying every violation.
void require_valid(const RingConfig& config, const std::optional<BigInt>& declared_s = std::nullopt);

/// All tick lengths 1 and one common link delay.
bool is_lockstep(const RingConfig& config);

}  // namespace ringelect
