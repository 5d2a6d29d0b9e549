#include "doctest.h"

#include "test_support.hpp"

#include "ringelect/bounds.hpp"
#include "ringelect/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>

using namespace ringelect;
using namespace testing_support;

namespace {

void check_against_oracle(const RingConfig& c, const Outcome& o, bool filter = false)
{
    const oracle::Result r = oracle::brute_force(to_oracle(c, filter));
    CHECK(o.passes.wakeup == r.wakeup);
    CHECK(o.passes.election == r.election);
    CHECK(o.passes.sleepwell == r.sleepwell);
    CHECK(o.first_wake == r.first_wake);
    CHECK(o.completion == r.completion);
    CHECK(o.winner.value == r.winner);
    std::map<std::uint64_t, std::uint64_t> by_origin;
    for (const auto& [name, count] : o.election_passes_by_origin) {
        by_origin[name.value] = count;
    }
    CHECK(by_origin == r.by_origin);
}

// Structural invariants every finished run satisfies.
void check_invariants(const RingConfig& c, const Outcome& o)
{
    const std::size_t n = c.size();
    const Name l = c.min_name();
    CHECK(o.winner == l);
    CHECK(o.passes.wakeup == n);
    CHECK(o.passes.sleepwell == n);
    CHECK(o.election_passes_by_origin.at(l) == n);
    for (const auto& [name, count] : o.election_passes_by_origin) {
        if (name != l) {
            CHECK(count < n);
        }
    }
    CHECK(o.bits.framing == 2 * o.passes.total());

    if (o.trace.empty()) {
        return;
    }
    const auto trace = parse_trace(o.trace);

    // Sleepwell goes once around, clockwise, starting at the winner.
    const std::size_t winner_pos = static_cast<std::size_t>(std::find(c.names.begin(), c.names.end(), l) - c.names.begin());
    std::vector<std::size_t> sleepwell_senders;
    for (const auto& t : trace) {
        if (t.kind == "SEND" && t.detail == "sleepwell") {
            sleepwell_senders.push_back(t.pos);
        }
    }
    REQUIRE(sleepwell_senders.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(sleepwell_senders[i] == (winner_pos + i) % n);
    }
    CHECK(trace.back().kind == "HALT");

    // FIFO links: what p receives is exactly what p-1 sent, in order.
    std::vector<std::vector<std::string>> sent(n), received(n);
    for (const auto& t : trace) {
        if (t.kind == "SEND") {
            sent[(t.pos + 1) % n].push_back(t.detail);
        } else if (t.kind == "ARRIVE") {
            received[t.pos].push_back(t.detail);
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        CHECK(sent[p] == received[p]);
    }
}

RingConfig random_small_ring(Rng& rng, DelayPolicy policy)
{
    RandomSpec spec;
    spec.n = 2 + rng.below(6);
    spec.seed = rng.next();
    spec.mode = HeterogeneousMode{1, 1 + rng.below(4), rng.below(4)};
    spec.extra_wakers = rng.below(3);
    spec.policy = std::move(policy);
    return random_config(spec);
}

}  // namespace

TEST_CASE("derive_params")
{
    const RingConfig sync = lockstep({1, 2, 3});
    const DerivedParams a = derive_params(sync);
    CHECK(a.m == 1);
    CHECK(a.u == 1);
    CHECK(a.s == 1);
    CHECK(a.w_p == 3);
    CHECK(a.w_s == 0);
    CHECK(a.w == 3);

    const RingConfig mixed = ring({1, 2}, {2, 3}, {1, 4}, {{0, 0}});
    const DerivedParams b = derive_params(mixed);
    CHECK(b.m == 2);
    CHECK(b.u_clock == 3);
    CHECK(b.u == 7);
    CHECK(b.s == 4);
    CHECK(b.epsilon == 1);
    CHECK(b.w_s == 5);
    CHECK(b.w == 10);

    // second evaluation straight from the arrays
    const std::vector<long> tick = {2, 3}, delay = {1, 4};
    const long m = *std::min_element(tick.begin(), tick.end());
    const long u = *std::max_element(tick.begin(), tick.end()) + *std::max_element(delay.begin(), delay.end());
    CHECK(b.s == (u + m - 1) / m);
    CHECK(b.w == std::accumulate(tick.begin(), tick.end(), 0L) + std::accumulate(delay.begin(), delay.end(), 0L));

    const DerivedParams adv = derive_params(adversarial_config(4));
    CHECK(adv.m == 2);
    CHECK(adv.u == 16);
    CHECK(adv.s == 8);

    CHECK_THROWS_AS(derive_params(ring({1, 2}, {1}, {0, 0}, {{0, 0}})), ConfigError);
}

TEST_CASE("validate_config")
{
    CHECK_FALSE(validate_config(lockstep({1, 1, 2})).empty());
    CHECK_FALSE(validate_config(ring({1, 2}, {1, 1000}, {0, 0}, {{0, 0}}), BigInt(10)).empty());
    CHECK(validate_config(ring({1, 2}, {1, 1000}, {0, 0}, {{0, 0}})).empty());
    CHECK(validate_config(ring({1, 2}, {1, 10}, {0, 0}, {{0, 0}}), BigInt(10)).empty());
    CHECK_FALSE(validate_config(ring({1, 2}, {1, 1}, {0, 0}, {})).empty());
    CHECK_FALSE(validate_config(ring({1, 2}, {0, 1}, {0, 0}, {{0, 0}})).empty());
    CHECK_FALSE(validate_config(ring({1, 2}, {1, 1}, {0, 0}, {{5, 0}})).empty());
    CHECK_FALSE(validate_config(ring({1}, {1}, {0}, {{0, 0}})).empty());
    Table flat;
    flat.ticks = {{Name(1), 3}, {Name(2), 3}};
    CHECK_FALSE(validate_config(ring({1, 2}, {1, 1}, {0, 0}, {{0, 0}}, flat)).empty());
}

TEST_CASE("run_election: three processors in lockstep")
{
    const RingConfig c = lockstep({2, 1, 3});
    const Outcome o = run_election(c, {Strategy::Clocked, true});
    CHECK(o.winner == Name(1));
    CHECK(o.passes.wakeup == 3);
    CHECK(o.passes.sleepwell == 3);
    // Hand trace: every processor emits at t=1; M_3 dies at 2, M_2 dies at 1,
    // M_1 is held 2 ticks at 3 and at 2 and is read back home at t=8.
    CHECK(o.passes.election == 5);
    CHECK(o.election_passes_by_origin.at(Name(1)) == 3);
    CHECK(o.election_passes_by_origin.at(Name(2)) == 1);
    CHECK(o.election_passes_by_origin.at(Name(3)) == 1);
    CHECK(o.completion == 8);
    check_invariants(c, o);
    check_against_oracle(c, o);
}

TEST_CASE("run_election: two processors")
{
    const RingConfig c = lockstep({1, 2});
    const Outcome o = run_election(c);
    CHECK(o.winner == Name(1));
    check_invariants(c, o);
    check_against_oracle(c, o);
}

TEST_CASE("run_election: adversarial ring of four")
{
    const RingConfig c = adversarial_config(4);
    const Outcome o = run_election(c, {Strategy::Clocked, true});
    CHECK(o.passes.election == 10);
    for (std::uint64_t i = 1; i <= 4; ++i) {
        CHECK(o.election_passes_by_origin.at(Name(i)) == 4 - i + 1);
    }
    CHECK(o.overtakes == 0);
    check_invariants(c, o);
    check_against_oracle(c, o);
}

TEST_CASE("step")
{
    const RingConfig c = ring({2, 1, 3}, {1, 1, 1}, {0, 0, 0}, {{2, 5}, {1, 3}});
    Simulation sim(c);
    const SimEvent first = sim.step();
    CHECK(first.kind == EventKind::SpontaneousWake);
    CHECK(first.pos == 1);
    CHECK(first.time == 3);

    // The wake's own actions put a wakeup on the link; the next tick of the
    // woken processor sits one tick length later.
    bool saw_tick = false;
    while (!saw_tick) {
        const SimEvent ev = sim.step();
        if (ev.kind == EventKind::LocalTick && ev.pos == 1) {
            CHECK(ev.time == 4);
            CHECK(ev.tick_index == 1);
            saw_tick = true;
        }
    }

    Simulation full(lockstep({2, 1, 3}), {Strategy::Clocked, true});
    while (!full.halted()) {
        full.step();
    }
    CHECK(full.outcome() == run_election(lockstep({2, 1, 3}), {Strategy::Clocked, true}));
    CHECK_THROWS_AS(full.step(), std::logic_error);

    Simulation fresh(lockstep({1, 2}));
    CHECK_THROWS_AS(fresh.outcome(), std::logic_error);
}

TEST_CASE("invalid configs are refused")
{
    CHECK_THROWS_AS(Simulation(lockstep({1, 1})), ConfigError);
}

TEST_CASE("determinism: identical configs give identical outcomes and traces")
{
    Rng rng(99);
    for (int i = 0; i < 20; ++i) {
        const RingConfig c = random_small_ring(rng, Power2{});
        CHECK(run_election(c, {Strategy::Clocked, true}) == run_election(c, {Strategy::Clocked, true}));
    }
}

TEST_CASE("property: engine agrees with the brute-force oracle on random rings")
{
    Rng rng(2024);
    for (int i = 0; i < 150; ++i) {
        const RingConfig c = random_small_ring(rng, Power2{});
        CAPTURE(i);
        const Outcome o = run_election(c, {Strategy::Clocked, true});
        check_invariants(c, o);
        check_against_oracle(c, o);
    }
    for (int i = 0; i < 100; ++i) {
        const RingConfig c = random_small_ring(rng, Relative{});
        CAPTURE(i);
        const Outcome o = run_election(c, {Strategy::Clocked, true});
        check_invariants(c, o);
        check_against_oracle(c, o);
    }
    for (int i = 0; i < 100; ++i) {
        const RingConfig c = random_small_ring(rng, Power2{});
        CAPTURE(i);
        const Outcome o = baseline_filter_run(c, true);
        check_invariants(c, o);
        check_against_oracle(c, o, true);
    }
}

TEST_CASE("property: per-origin passes within twice the rounded lifetime bound")
{
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        RandomSpec spec;
        spec.n = 2 + rng.below(30);
        spec.seed = rng.next();
        spec.mode = HeterogeneousMode{1, 1 + rng.below(8), rng.below(5)};
        spec.extra_wakers = rng.below(3);
        const RingConfig c = random_config(spec);
        const Outcome o = run_election(c);
        for (const auto& [name, count] : o.election_passes_by_origin) {
            if (name != c.min_name()) {
                CHECK(BigInt(count) <= 2 * ceil(eq1_bound(c, name)));
            }
        }
    }
}

TEST_CASE("lockstep rings never have more than one readable message per tick")
{
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        RandomSpec spec;
        spec.n = 2 + rng.below(40);
        spec.seed = rng.next();
        spec.mode = LockstepMode{rng.below(3)};
        for (DelayPolicy p : {DelayPolicy{Power2{}}, DelayPolicy{Relative{}}}) {
            spec.policy = p;
            const RingConfig c = random_config(spec);
            CHECK(run_election(c).max_readable_backlog <= 1);
            CHECK(baseline_filter_run(c).max_readable_backlog <= 1);
        }
    }
}

TEST_CASE("time bound with factor-two slack in lockstep")
{
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        RandomSpec spec;
        spec.n = 2 + rng.below(60);
        spec.seed = rng.next();
        spec.mode = LockstepMode{rng.below(3)};
        const RingConfig c = random_config(spec);
        const Outcome o = run_election(c);
        CHECK(Rational(o.completion - o.first_wake) <= 2 * time_bounds(c).time_abs);
    }
}

TEST_CASE("trace line format")
{
    CHECK(format_trace_line(12, "SEND", 3, "election:7") == "time=12 kind=SEND pos=3 detail=election:7");
    const Outcome o = run_election(lockstep({1, 2}), {Strategy::Clocked, true});
    CHECK(o.trace.front() == "time=0 kind=WAKE pos=0 detail=spontaneous");
    CHECK(o.trace.back() == "time=5 kind=HALT pos=0 detail=winner:1");
}
