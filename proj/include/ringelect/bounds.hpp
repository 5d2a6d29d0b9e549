#pragma once

#include "ringelect/config.hpp"
#include "ringelect/numeric.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ringelect {

/// The message-pass bounds presume f depends on the carried name only.
class UnsupportedPolicy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every evaluator is exact. l is the smallest name, u and m come from
// derive_params, and "log i" is dyadic_length(i).

/// Passes an election message from `origin` can make while the winner's is
/// still circling: N u (f(l)+1) / (m f(i)).
Rational eq1_bound(const RingConfig& config, Name origin);

/// 2N + N u (f(l)+1)/m * sum_i 1/f(i)
Rational eq2_bound(const RingConfig& config);

/// 2N + 3 N u / m; dominates eq2_bound whenever f(i) >= 2^i.
Rational eq2_closed(const RingConfig& config);

/// 2N + N u (f(l)+1)/m * sum_i lambda(i)/f(i)
Rational eq3_bits_bound(const RingConfig& config);

/// Uses that M_l makes exactly N passes:
/// 3N + N u (f(l)+1)/m * sum_{i != l} 1/f(i)
Rational eq4_bound(const RingConfig& config);

/// Expected passes over name permutations, in walk-time terms:
/// 2N + N * sum_i (w + w_s + w_p f(l) lambda(l)) / (w_s + w_p f(i) lambda(i)).
/// Throws std::domain_error when w_p = w_s = 0.
Rational eq5_expected_bound(const RingConfig& config);

struct SplitBound {
    Rational total;   // 2N + sum_i (N u' (f(l)+1) + 2 w_s) / (m f(i) + w_s)
    Rational closed;  // 7N + 3 eps N / m
};

/// Clock and propagation delays accounted separately.
SplitBound split_delay_bound(const RingConfig& config);

struct TimeBounds {
    Rational time_abs;              // N u (f(l)+2)
    Rational time_walk;             // 2w + w_s + w_p f(l) lambda(l)
    Rational time_relative_circle;  // w_s + w_p lambda(l)
    Rational time_relative_total;   // 3w + w_p (lambda(l) - 1)
};

/// f(l) is f(l, l) = 1 under the Relative policy.
TimeBounds time_bounds(const RingConfig& config);

struct BoundReport {
    std::size_t n = 0;
    Name l;
    std::string policy;
    DerivedParams params;

    // Absent for policies that are not id-only.
    std::optional<std::map<Name, Rational>> eq1_per_origin;
    std::optional<Rational> eq2_total;
    std::optional<Rational> eq2_closed;
    std::optional<Rational> eq3_bits;
    std::optional<Rational> eq4_total;
    std::optional<SplitBound> split;
    std::optional<Rational> eq5_expected;
    TimeBounds time;
};

BoundReport make_bound_report(const RingConfig& config);

}  // namespace ringelect
