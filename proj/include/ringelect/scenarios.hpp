#pragma once

#include "ringelect/config.hpp"
#include "ringelect/numeric.hpp"
#include "ringelect/simulator.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ringelect {

/// Worst case under adversarial clocks for f(i) = 2^i: names 1..N ascending
/// clockwise, processor i ticking every 2^(N-i+1) units, zero link delay,
/// everyone waking at time 0. No message ever overtakes another, so every
/// M_i runs until it reaches processor 1.
RingConfig adversarial_config(std::size_t n);

/// Same placement under the Relative policy in lockstep; with equal hold
/// times nothing overtakes and the pass count is quadratic.
RingConfig adversarial_relative_config(std::size_t n);

struct LockstepMode {
    std::uint64_t delta = 0;  // common link delay
};

struct HeterogeneousMode {
    std::uint64_t m = 1;      // tick lengths uniform in [m, u_max]
    std::uint64_t u_max = 1;
    std::uint64_t d_max = 0;  // link delays uniform in [0, d_max]
};

using RandomMode = std::variant<LockstepMode, HeterogeneousMode>;

struct RandomSpec {
    std::size_t n = 2;
    std::uint64_t seed = 0;
    RandomMode mode = LockstepMode{};
    std::size_t extra_wakers = 0;  // spontaneous wakers beyond the one at time 0
    std::uint64_t name_base = 1;   // names are a permutation of name_base .. name_base+n-1
    DelayPolicy policy = Power2{};
};

/// Draw order: name permutation, tick lengths, link delays (heterogeneous
/// only), the time-0 waker's position, then (position, time) per extra waker
/// with times uniform in [0, N * max tick]. Throws ConfigError on bad ranges.
RingConfig random_config(const RandomSpec& spec);

enum class PolicyChoice { Power2, Scaled, Relative };

std::string to_string(PolicyChoice p);
PolicyChoice parse_policy_choice(const std::string& text);

/// Power2, Relative, or ScaledPower with rho = 2 ceil(u/m) for this config.
DelayPolicy make_policy(PolicyChoice choice, const RingConfig& config);

struct TrialSummary {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    Name winner;
    std::uint64_t election_passes = 0;
    std::uint64_t total_passes = 0;
    std::uint64_t bits = 0;
    std::optional<Rational> eq5_bound;  // absent for the Relative policy
    bool within_eq5 = false;

    friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

struct ExperimentStats {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    PolicyChoice policy = PolicyChoice::Power2;
    std::vector<TrialSummary> per_trial;

    Rational mean_election;
    std::uint64_t min_election = 0;
    std::uint64_t max_election = 0;
    Rational mean_total;
    Rational mean_bits;
    Rational mean_eq5;  // over trials that have a bound
};

/// Raised when a trial faults; carries the trial seed.
class ExperimentError : public std::runtime_error {
public:
    ExperimentError(std::uint64_t seed, const std::string& what);
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Aggregates per-trial summaries; exposed so tests can recompute means.
ExperimentStats summarize(std::size_t n, std::uint64_t seed, PolicyChoice policy, std::vector<TrialSummary> trials);

/// Random-permutation lockstep trials, one time-0 waker each. Trial t uses
/// derive_seed(seed, t).
ExperimentStats average_case_experiment(std::size_t n, std::size_t trials, std::uint64_t seed,
                                        PolicyChoice policy, std::uint64_t delta = 0, unsigned threads = 0);

/// Forward-if-smaller baseline on the same engine; the delay policy is ignored.
Outcome baseline_filter_run(const RingConfig& config, bool trace = false);

class UnsupportedMode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class HoldKind { IdOnly, Relative };

/// In lockstep with link delay delta, M_l is held `hold` ticks at each of the
/// other N-1 processors and needs delta + 1 ticks per hop to become readable,
/// so the winner counts hold*(N-1) + (delta+1)*N ticks from emitting M_l to
/// reading it back. hold is f(l) for id-only policies and 1 for Relative.
/// Throws InvariantFault if the count does not invert to an integer N >= 2.
std::size_t ring_size_from_time(const BigInt& winner_elapsed_ticks, const BigInt& f_l, const BigInt& delta,
                                HoldKind kind);

/// Runs the election and inverts the winner's tick count. Throws
/// UnsupportedMode for non-lockstep rings.
std::size_t ring_size_from_outcome(const RingConfig& config, const Outcome& outcome);

struct CompareRow {
    std::size_t n = 0;
    Rational mean_power2;
    Rational mean_relative;
    Rational mean_filter;
    Rational mean_eq5;  // over the Power2 runs

    Rational per_n(const Rational& mean) const { return mean / static_cast<long long>(n); }
};

/// Per N, the same random lockstep permutations run under Power2, Relative
/// and the filter baseline.
std::vector<CompareRow> compare_protocols(const std::vector<std::size_t>& n_list, std::size_t trials,
                                          std::uint64_t seed, unsigned threads = 0);

}  // namespace ringelect
