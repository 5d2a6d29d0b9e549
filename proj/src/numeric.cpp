#include "ringelect/numeric.hpp"

#include <stdexcept>

namespace ringelect {

std::string to_decimal_string(const Rational& r, unsigned places)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;

    BigInt scale = 1;
    for (unsigned i = 0; i < places; ++i) {
        scale *= 10;
    }
    const bool negative = r < 0;
    const Rational magnitude = negative ? Rational(-r) : r;
    // round half up on the magnitude
    BigInt scaled = floor_div(numerator(magnitude) * scale * 2 + denominator(magnitude), denominator(magnitude) * 2);

    std::string whole = BigInt(scaled / scale).str();
    std::string frac = BigInt(scaled % scale).str();
    std::string out = negative && scaled != 0 ? "-" : "";
    out += whole;
    if (places > 0) {
        out += '.';
        out += std::string(places - frac.size(), '0');
        out += frac;
    }
    return out;
}

Rational parse_rational(const std::string& text)
{
    auto parse_int = [&](const std::string& part) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("not a rational: '" + text + "'");
        }
        return BigInt(part);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_int(text));
    }
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator: '" + text + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace ringelect
