#pragma once

#include "ringelect/message.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ringelect {

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bijective base-2 numeral: digits 1 and 2 carry weights 2^position, so every
/// positive integer has exactly one representation and there are no leading zeros.
/// 1, 2, 3, 4, 5, 6 encode as 1, 2, 11, 12, 21, 22.
class DyadicString {
public:
    /// Throws DecodeError unless `digits` is nonempty and drawn from {'1','2'}.
    explicit DyadicString(std::string digits);

    const std::string& digits() const noexcept { return digits_; }
    std::size_t length() const noexcept { return digits_.size(); }

    friend bool operator==(const DyadicString&, const DyadicString&) = default;

    /// Length first, then lexicographic; agrees with numeric order.
    friend std::strong_ordering operator<=>(const DyadicString& a, const DyadicString& b);

private:
    std::string digits_;
};

/// Throws std::domain_error for n = 0.
DyadicString dyadic_encode(std::uint64_t n);

/// Throws DecodeError on an empty string, a digit outside {1,2}, or overflow.
std::uint64_t dyadic_decode(std::string_view digits);
std::uint64_t dyadic_decode(const DyadicString& s);

/// Length of the dyadic code of n, floor(log2(n+1)). Stands in for "log n" in
/// every bit-complexity formula so bounds and simulator agree on what a bit costs.
unsigned dyadic_length(std::uint64_t n);

struct MessageBits {
    std::uint64_t framing = 0;
    std::uint64_t payload = 0;

    std::uint64_t total() const noexcept { return framing + payload; }
    friend bool operator==(const MessageBits&, const MessageBits&) = default;
};

/// Every message carries a 2-bit class tag; election messages add the dyadic
/// code of their name.
inline constexpr std::uint64_t kFramingBits = 2;

MessageBits message_bits(const Message& msg);

}  // namespace ringelect
