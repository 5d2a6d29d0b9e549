#include "ringelect/protocol.hpp"

#include <algorithm>
#include <sstream>

namespace ringelect {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

BigInt ceil_power(const Rational& base, std::uint64_t exponent)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const unsigned e = static_cast<unsigned>(exponent);
    return ceil_div(boost::multiprecision::pow(BigInt(numerator(base)), e),
                    boost::multiprecision::pow(BigInt(denominator(base)), e));
}

std::string mode_name(Mode m)
{
    switch (m) {
    case Mode::Unwoken: return "Unwoken";
    case Mode::Awake: return "Awake";
    case Mode::Done: return "Done";
    }
    return "?";
}

void require_awake(const ProcessorState& s, const char* op)
{
    if (s.mode != Mode::Awake) {
        std::ostringstream os;
        os << op << ": processor " << s.own << " is " << mode_name(s.mode) << ", expected Awake";
        throw ProtocolViolation(os.str());
    }
}

}  // namespace

bool is_id_only(const DelayPolicy& policy) { return !std::holds_alternative<Relative>(policy); }

std::string policy_kind_name(const DelayPolicy& policy)
{
    return std::visit(overloaded{
                          [](const Power2&) { return std::string("power2"); },
                          [](const ScaledPower&) { return std::string("scaled"); },
                          [](const Relative&) { return std::string("relative"); },
                          [](const Table&) { return std::string("table"); },
                      },
                      policy);
}

BigInt eval_delay(const DelayPolicy& policy, Name receiver, Name carried)
{
    return std::visit(overloaded{
                          [&](const Power2&) { return pow2(carried.value); },
                          [&](const ScaledPower& p) { return ceil_power(p.rho, carried.value); },
                          [&](const Relative&) {
                              return carried >= receiver ? pow2(carried.value - receiver.value) : BigInt(1);
                          },
                          [&](const Table& t) {
                              auto it = t.ticks.find(carried);
                              if (it == t.ticks.end()) {
                                  std::ostringstream os;
                                  os << "delay table has no entry for name " << carried;
                                  throw PolicyError(os.str());
                              }
                              return it->second;
                          },
                      },
                      policy);
}

BigInt eval_id_delay(const DelayPolicy& policy, Name name)
{
    if (!is_id_only(policy)) {
        throw PolicyError("relative delay depends on the receiver as well as the name");
    }
    return eval_delay(policy, name, name);
}

std::vector<std::string> validate_policy(const DelayPolicy& policy, const std::vector<Name>& names)
{
    std::vector<std::string> violations;
    if (names.empty()) {
        violations.emplace_back("policy: empty name set");
        return violations;
    }
    if (!is_id_only(policy)) {
        return violations;
    }
    if (const auto* sp = std::get_if<ScaledPower>(&policy); sp && sp->rho < 2) {
        violations.emplace_back("policy: scaled rho must be at least 2, got " + to_fraction_string(sp->rho));
        return violations;
    }

    std::vector<Name> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    std::optional<BigInt> previous;
    Name previous_name;
    for (Name n : sorted) {
        BigInt f;
        try {
            f = eval_delay(policy, n, n);
        } catch (const PolicyError& e) {
            violations.emplace_back(std::string("policy: ") + e.what());
            previous.reset();
            continue;
        }
        if (f < 1) {
            std::ostringstream os;
            os << "policy: f(" << n << ") = " << f << " is below one tick";
            violations.push_back(os.str());
        }
        if (previous && f <= *previous) {
            std::ostringstream os;
            os << "policy: not strictly increasing, f(" << previous_name << ") = " << *previous << " >= f(" << n
               << ") = " << f;
            violations.push_back(os.str());
        }
        previous = f;
        previous_name = n;
    }
    return violations;
}

Transition awake_init(const ProcessorState& state)
{
    if (state.mode != Mode::Unwoken) {
        std::ostringstream os;
        os << "awake_init: processor " << state.own << " is already " << mode_name(state.mode);
        throw ProtocolViolation(os.str());
    }
    Transition t{state, {SendWakeup{}}};
    t.state.mode = Mode::Awake;
    t.state.k = state.own;
    t.state.timer = 1;
    t.state.pending_send = true;
    return t;
}

Transition tick_step(const ProcessorState& state, std::optional<Name> incoming, const DelayPolicy& policy)
{
    require_awake(state, "tick_step");
    Transition t{state, {}};
    ProcessorState& s = t.state;

    if (incoming && *incoming == s.k) {
        if (s.k != s.own) {
            std::ostringstream os;
            os << "processor " << s.own << " received its candidate " << s.k << " back but does not own it";
            throw ProtocolViolation(os.str());
        }
        s.mode = Mode::Done;
        s.elected = s.k;
        s.pending_send = false;
        t.actions = {DeclareElected{s.k}, SendSleepwell{}};
        return t;
    }
    if (incoming && *incoming < s.k) {
        s.k = *incoming;
        s.timer = eval_delay(policy, s.own, s.k);
        s.pending_send = true;
        return t;
    }
    // Larger name or nothing read: any message dies here.
    s.timer -= 1;
    if (s.pending_send && s.timer == 0) {
        s.pending_send = false;
        t.actions.push_back(SendElection{s.k});
    }
    return t;
}

Transition receive_control(const ProcessorState& state, const Message& msg)
{
    if (std::holds_alternative<WakeupMsg>(msg)) {
        if (state.mode == Mode::Unwoken) {
            return awake_init(state);
        }
        return {state, {}};
    }
    if (!std::holds_alternative<SleepwellMsg>(msg)) {
        throw ProtocolViolation("receive_control: election messages go through tick_step");
    }

    std::ostringstream os;
    switch (state.mode) {
    case Mode::Unwoken:
        os << "sleepwell reached processor " << state.own << " before it woke";
        throw ProtocolViolation(os.str());
    case Mode::Awake: {
        Transition t{state, {}};
        t.state.mode = Mode::Done;
        t.state.elected = state.k;
        t.state.pending_send = false;
        t.actions = {DeclareElected{state.k}, SendSleepwell{}};
        return t;
    }
    case Mode::Done:
        if (state.elected != state.own) {
            os << "sleepwell came around twice to non-winner " << state.own;
            throw ProtocolViolation(os.str());
        }
        return {state, {Halt{}}};
    }
    throw ProtocolViolation("receive_control: bad mode");
}

FilterTransition filter_awake(const FilterState& state)
{
    Transition t = awake_init(state.core);
    t.state.timer = 0;
    t.state.pending_send = false;
    return {{t.state, {state.core.own}}, t.actions};
}

FilterTransition filter_tick(const FilterState& state, std::optional<Name> incoming)
{
    require_awake(state.core, "filter_tick");
    FilterTransition t{state, {}};
    ProcessorState& s = t.state.core;

    if (!t.state.outbox.empty()) {
        t.actions.push_back(SendElection{t.state.outbox.front()});
        t.state.outbox.pop_front();
    }
    if (!incoming) {
        return t;
    }
    if (*incoming == s.k) {
        if (s.k != s.own) {
            std::ostringstream os;
            os << "filter: processor " << s.own << " saw " << s.k << " twice";
            throw ProtocolViolation(os.str());
        }
        s.mode = Mode::Done;
        s.elected = s.k;
        t.actions.push_back(DeclareElected{s.k});
        t.actions.push_back(SendSleepwell{});
    } else if (*incoming < s.k) {
        s.k = *incoming;
        t.state.outbox.push_back(s.k);
    }
    return t;
}

FilterTransition filter_receive_control(const FilterState& state, const Message& msg)
{
    if (std::holds_alternative<WakeupMsg>(msg) && state.core.mode == Mode::Unwoken) {
        return filter_awake(state);
    }
    Transition t = receive_control(state.core, msg);
    FilterTransition out{{t.state, state.outbox}, t.actions};
    if (t.state.mode == Mode::Done) {
        out.state.outbox.clear();
    }
    return out;
}

}  // namespace ringelect
