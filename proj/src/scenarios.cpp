#include "ringelect/scenarios.hpp"

#include "ringelect/bounds.hpp"
#include "ringelect/parallel.hpp"
#include "ringelect/rng.hpp"

#include <algorithm>
#include <numeric>

namespace ringelect {

namespace {

void require_ring_size(std::size_t n)
{
    if (n < 2) {
        throw ConfigError({"ring needs at least 2 processors, got " + std::to_string(n)});
    }
}

RingConfig ascending_ring(std::size_t n)
{
    require_ring_size(n);
    RingConfig c;
    for (std::size_t i = 1; i <= n; ++i) {
        c.names.emplace_back(i);
        c.wake.push_back({i - 1, 0});
    }
    c.link_delay.assign(n, BigInt(0));
    return c;
}

Rational mean_of(const std::vector<TrialSummary>& trials, std::uint64_t TrialSummary::*field)
{
    BigInt sum = 0;
    for (const auto& t : trials) {
        sum += t.*field;
    }
    return Rational(sum) / Rational(static_cast<long long>(trials.size()));
}

}  // namespace

RingConfig adversarial_config(std::size_t n)
{
    RingConfig c = ascending_ring(n);
    for (std::size_t i = 1; i <= n; ++i) {
        c.tick_len.push_back(pow2(n - i + 1));
    }
    c.policy = Power2{};
    return c;
}

RingConfig adversarial_relative_config(std::size_t n)
{
    RingConfig c = ascending_ring(n);
    c.tick_len.assign(n, BigInt(1));
    c.policy = Relative{};
    return c;
}

RingConfig random_config(const RandomSpec& spec)
{
    require_ring_size(spec.n);
    if (spec.name_base == 0) {
        throw ConfigError({"name_base must be positive"});
    }
    Rng rng(spec.seed);
    RingConfig c;
    c.policy = spec.policy;
    c.names.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        c.names.emplace_back(spec.name_base + i);
    }
    rng.shuffle(std::span<Name>(c.names));

    std::uint64_t max_tick = 1;
    if (const auto* ls = std::get_if<LockstepMode>(&spec.mode)) {
        c.tick_len.assign(spec.n, BigInt(1));
        c.link_delay.assign(spec.n, BigInt(ls->delta));
    } else {
        const auto& h = std::get<HeterogeneousMode>(spec.mode);
        if (h.m < 1 || h.u_max < h.m) {
            throw ConfigError({"heterogeneous ranges need 1 <= m <= u_max, got m = " + std::to_string(h.m) +
                               ", u_max = " + std::to_string(h.u_max)});
        }
        for (std::size_t p = 0; p < spec.n; ++p) {
            c.tick_len.emplace_back(rng.between(h.m, h.u_max));
        }
        for (std::size_t p = 0; p < spec.n; ++p) {
            c.link_delay.emplace_back(rng.between(0, h.d_max));
        }
        max_tick = h.u_max;
    }

    c.wake.push_back({static_cast<std::size_t>(rng.below(spec.n)), 0});
    for (std::size_t e = 0; e < spec.extra_wakers; ++e) {
        const auto pos = static_cast<std::size_t>(rng.below(spec.n));
        const auto time = rng.between(0, spec.n * max_tick);
        c.wake.push_back({pos, time});
    }
    return c;
}

std::string to_string(PolicyChoice p)
{
    switch (p) {
    case PolicyChoice::Power2: return "power2";
    case PolicyChoice::Scaled: return "scaled";
    case PolicyChoice::Relative: return "relative";
    }
    return "?";
}

PolicyChoice parse_policy_choice(const std::string& text)
{
    if (text == "power2") {
        return PolicyChoice::Power2;
    }
    if (text == "scaled") {
        return PolicyChoice::Scaled;
    }
    if (text == "relative") {
        return PolicyChoice::Relative;
    }
    throw std::invalid_argument("unknown policy '" + text + "' (expected power2, scaled or relative)");
}

DelayPolicy make_policy(PolicyChoice choice, const RingConfig& config)
{
    switch (choice) {
    case PolicyChoice::Power2: return Power2{};
    case PolicyChoice::Relative: return Relative{};
    case PolicyChoice::Scaled: return ScaledPower{Rational(2 * derive_params(config).s)};
    }
    return Power2{};
}

ExperimentError::ExperimentError(std::uint64_t seed, const std::string& what)
    : std::runtime_error("trial seed " + std::to_string(seed) + ": " + what), seed_(seed)
{
}

ExperimentStats summarize(std::size_t n, std::uint64_t seed, PolicyChoice policy, std::vector<TrialSummary> trials)
{
    ExperimentStats s;
    s.n = n;
    s.trials = trials.size();
    s.seed = seed;
    s.policy = policy;
    s.per_trial = std::move(trials);
    if (s.per_trial.empty()) {
        return s;
    }
    s.mean_election = mean_of(s.per_trial, &TrialSummary::election_passes);
    s.mean_total = mean_of(s.per_trial, &TrialSummary::total_passes);
    s.mean_bits = mean_of(s.per_trial, &TrialSummary::bits);
    auto [lo, hi] = std::minmax_element(s.per_trial.begin(), s.per_trial.end(),
                                        [](const auto& a, const auto& b) { return a.election_passes < b.election_passes; });
    s.min_election = lo->election_passes;
    s.max_election = hi->election_passes;

    Rational eq5_sum = 0;
    long long with_bound = 0;
    for (const auto& t : s.per_trial) {
        if (t.eq5_bound) {
            eq5_sum += *t.eq5_bound;
            ++with_bound;
        }
    }
    if (with_bound > 0) {
        s.mean_eq5 = eq5_sum / with_bound;
    }
    return s;
}

ExperimentStats average_case_experiment(std::size_t n, std::size_t trials, std::uint64_t seed, PolicyChoice policy,
                                        std::uint64_t delta, unsigned threads)
{
    if (trials == 0) {
        throw std::invalid_argument("average_case_experiment: at least one trial is required");
    }
    require_ring_size(n);
    auto run_trial = [&](std::size_t t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        try {
            RingConfig config = random_config({n, trial_seed, LockstepMode{delta}});
            config.policy = make_policy(policy, config);
            const Outcome out = run_election(config);

            TrialSummary s;
            s.index = t;
            s.seed = trial_seed;
            s.winner = out.winner;
            s.election_passes = out.passes.election;
            s.total_passes = out.passes.total();
            s.bits = out.bits.total();
            if (is_id_only(config.policy)) {
                s.eq5_bound = eq5_expected_bound(config);
                s.within_eq5 = Rational(s.total_passes) <= *s.eq5_bound;
            }
            return s;
        } catch (const InvariantFault& e) {
            throw ExperimentError(trial_seed, e.what());
        }
    };
    return summarize(n, seed, policy, parallel_map<TrialSummary>(trials, run_trial, threads));
}

Outcome baseline_filter_run(const RingConfig& config, bool trace)
{
    return run_election(config, {Strategy::Filter, trace});
}

std::size_t ring_size_from_time(const BigInt& winner_elapsed_ticks, const BigInt& f_l, const BigInt& delta,
                                HoldKind kind)
{
    const BigInt hold = kind == HoldKind::IdOnly ? f_l : BigInt(1);
    const BigInt per_hop = hold + delta + 1;
    const BigInt scaled = winner_elapsed_ticks + hold;
    if (scaled % per_hop != 0) {
        throw InvariantFault("ring size: " + winner_elapsed_ticks.str() + " ticks is not " + per_hop.str() +
                             " * N - " + hold.str() + " for any N");
    }
    const BigInt n = scaled / per_hop;
    if (n < 2) {
        throw InvariantFault("ring size: " + winner_elapsed_ticks.str() + " ticks implies fewer than 2 processors");
    }
    return static_cast<std::size_t>(n);
}

std::size_t ring_size_from_outcome(const RingConfig& config, const Outcome& outcome)
{
    if (!is_lockstep(config)) {
        throw UnsupportedMode("ring size from time needs lockstep clocks (all tick lengths 1, one common link delay)");
    }
    const Name l = config.min_name();
    const bool id_only = is_id_only(config.policy);
    const BigInt f_l = id_only ? eval_delay(config.policy, l, l) : BigInt(1);
    return ring_size_from_time(outcome.winner_circuit_ticks(), f_l, config.link_delay.front(),
                               id_only ? HoldKind::IdOnly : HoldKind::Relative);
}

std::vector<CompareRow> compare_protocols(const std::vector<std::size_t>& n_list, std::size_t trials,
                                          std::uint64_t seed, unsigned threads)
{
    if (trials == 0) {
        throw std::invalid_argument("compare_protocols: at least one trial is required");
    }
    struct Counts {
        std::uint64_t power2 = 0, relative = 0, filter = 0;
        Rational eq5;
    };
    std::vector<CompareRow> rows;
    for (std::size_t n : n_list) {
        require_ring_size(n);
        auto run_trial = [&](std::size_t t) {
            const std::uint64_t trial_seed = derive_seed(seed, t);
            try {
                RingConfig config = random_config({n, trial_seed, LockstepMode{0}});
                Counts c;
                c.power2 = run_election(config).passes.election;
                c.eq5 = eq5_expected_bound(config);
                c.filter = baseline_filter_run(config).passes.election;
                config.policy = Relative{};
                c.relative = run_election(config).passes.election;
                return c;
            } catch (const InvariantFault& e) {
                throw ExperimentError(trial_seed, e.what());
            }
        };
        const auto counts = parallel_map<Counts>(trials, run_trial, threads);
        CompareRow row;
        row.n = n;
        BigInt p2 = 0, rel = 0, fil = 0;
        Rational eq5 = 0;
        for (const auto& c : counts) {
            p2 += c.power2;
            rel += c.relative;
            fil += c.filter;
            eq5 += c.eq5;
        }
        const Rational count(static_cast<long long>(trials));
        row.mean_power2 = Rational(p2) / count;
        row.mean_relative = Rational(rel) / count;
        row.mean_filter = Rational(fil) / count;
        row.mean_eq5 = eq5 / count;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ringelect
