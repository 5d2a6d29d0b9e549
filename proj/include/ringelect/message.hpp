#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <variant>

namespace ringelect {

/// Processor name: a positive integer, unique within a ring.
struct Name {
    std::uint64_t value = 0;

    constexpr Name() = default;
    constexpr explicit Name(std::uint64_t v) : value(v) {}

    friend constexpr auto operator<=>(const Name&, const Name&) = default;
};

inline std::ostream& operator<<(std::ostream& os, Name n) { return os << n.value; }

struct WakeupMsg {
    friend constexpr bool operator==(const WakeupMsg&, const WakeupMsg&) = default;
};

struct ElectionMsg {
    Name carried;
    friend constexpr bool operator==(const ElectionMsg&, const ElectionMsg&) = default;
};

struct SleepwellMsg {
    friend constexpr bool operator==(const SleepwellMsg&, const SleepwellMsg&) = default;
};

using Message = std::variant<WakeupMsg, ElectionMsg, SleepwellMsg>;

inline bool is_election(const Message& m) { return std::holds_alternative<ElectionMsg>(m); }

}  // namespace ringelect

template <>
struct std::hash<ringelect::Name> {
    std::size_t operator()(ringelect::Name n) const noexcept { return std::hash<std::uint64_t>{}(n.value); }
};
