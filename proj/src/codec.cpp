#include "ringelect/codec.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace ringelect {

namespace {

bool valid_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '1' || c == '2'; });
}

}  // namespace

DyadicString::DyadicString(std::string digits) : digits_(std::move(digits))
{
    if (!valid_digits(digits_)) {
        throw DecodeError("dyadic string must be nonempty over {1,2}: '" + digits_ + "'");
    }
}

std::strong_ordering operator<=>(const DyadicString& a, const DyadicString& b)
{
    if (auto c = a.length() <=> b.length(); c != 0) {
        return c;
    }
    return a.digits_.compare(b.digits_) <=> 0;
}

DyadicString dyadic_encode(std::uint64_t n)
{
    if (n == 0) {
        throw std::domain_error("dyadic_encode: names are positive integers");
    }
    std::string digits;
    while (n > 0) {
        if (n % 2 == 1) {
            digits.push_back('1');
            n = (n - 1) / 2;
        } else {
            digits.push_back('2');
            n = (n - 2) / 2;
        }
    }
    std::reverse(digits.begin(), digits.end());
    return DyadicString(std::move(digits));
}

std::uint64_t dyadic_decode(std::string_view digits)
{
    if (digits.empty()) {
        throw DecodeError("dyadic_decode: empty string");
    }
    constexpr std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t n = 0;
    for (char c : digits) {
        if (c != '1' && c != '2') {
            throw DecodeError(std::string("dyadic_decode: illegal digit '") + c + "'");
        }
        const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
        if (n > (max - d) / 2) {
            throw DecodeError("dyadic_decode: value exceeds 64 bits");
        }
        n = 2 * n + d;
    }
    return n;
}

std::uint64_t dyadic_decode(const DyadicString& s) { return dyadic_decode(s.digits()); }

unsigned dyadic_length(std::uint64_t n)
{
    if (n == 0) {
        throw std::domain_error("dyadic_length: names are positive integers");
    }
    // floor(log2(n + 1)) without overflowing at UINT64_MAX
    if (n == std::numeric_limits<std::uint64_t>::max()) {
        return 64;
    }
    return static_cast<unsigned>(std::bit_width(n + 1) - 1);
}

MessageBits message_bits(const Message& msg)
{
    if (const auto* e = std::get_if<ElectionMsg>(&msg)) {
        return {kFramingBits, dyadic_length(e->carried.value)};
    }
    return {kFramingBits, 0};
}

}  // namespace ringelect
