#pragma once

#include "ringelect/message.hpp"
#include "ringelect/numeric.hpp"

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ringelect {

class ProtocolViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PolicyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Delay policies: how many local ticks an election message is held at a
// processor before being passed on.

/// f(k) = 2^k
struct Power2 {};

/// f(k) = ceil(rho^k), rho >= 2
struct ScaledPower {
    Rational rho{2};
};

/// f(receiver, carried) = ceil(2^(carried - receiver)): 2^(j-i) for j >= i, else 1.
struct Relative {};

/// Explicit f over the ring's names.
struct Table {
    std::map<Name, BigInt> ticks;
};

using DelayPolicy = std::variant<Power2, ScaledPower, Relative, Table>;

/// Id-only policies ignore the receiver and define f over names alone.
bool is_id_only(const DelayPolicy& policy);

std::string policy_kind_name(const DelayPolicy& policy);

/// Hold time for `carried` at `receiver`. Throws PolicyError for a Table
/// missing `carried`.
BigInt eval_delay(const DelayPolicy& policy, Name receiver, Name carried);

/// f(name) for id-only policies. Throws PolicyError for Relative.
BigInt eval_id_delay(const DelayPolicy& policy, Name name);

/// Empty when f >= 1 and strictly increasing over `names`; otherwise one
/// message per violation.
std::vector<std::string> validate_policy(const DelayPolicy& policy, const std::vector<Name>& names);

enum class Mode { Unwoken, Awake, Done };

struct ProcessorState {
    Name own;
    Mode mode = Mode::Unwoken;
    Name k;            // smallest candidate seen so far; meaningful only while Awake
    BigInt timer = 0;  // may run negative once the pending send has fired
    bool pending_send = false;
    std::optional<Name> elected;

    static ProcessorState unwoken(Name own)
    {
        ProcessorState s;
        s.own = own;
        s.k = own;
        return s;
    }

    friend bool operator==(const ProcessorState&, const ProcessorState&) = default;
};

struct SendWakeup {
    friend bool operator==(const SendWakeup&, const SendWakeup&) = default;
};
struct SendElection {
    Name name;
    friend bool operator==(const SendElection&, const SendElection&) = default;
};
struct SendSleepwell {
    friend bool operator==(const SendSleepwell&, const SendSleepwell&) = default;
};
struct DeclareElected {
    Name name;
    friend bool operator==(const DeclareElected&, const DeclareElected&) = default;
};
struct Halt {
    friend bool operator==(const Halt&, const Halt&) = default;
};

using ProtocolAction = std::variant<SendWakeup, SendElection, SendSleepwell, DeclareElected, Halt>;

struct Transition {
    ProcessorState state;
    std::vector<ProtocolAction> actions;
};

/// Wake-up: emit the wakeup message, become candidate for our own name with
/// timer 1 so our election message goes out on the first local tick.
Transition awake_init(const ProcessorState& state);
inline Transition awake_init(Name own) { return awake_init(ProcessorState::unwoken(own)); }

/// One local time unit of an awake processor, with at most one election
/// message read from the inbox. Control messages never pass through here.
///
///  - carried == k: our own message came home; declare and start the sleepwell.
///  - carried <  k: adopt it and restart the timer at f(receiver, carried).
///  - carried >  k or nothing read: the message (if any) dies here; count the
///    timer down and send M_k when it reaches zero with a send pending.
Transition tick_step(const ProcessorState& state, std::optional<Name> incoming, const DelayPolicy& policy);

/// Wakeup and sleepwell handling, applied at arrival time.
Transition receive_control(const ProcessorState& state, const Message& msg);

/// Filter baseline: forward a message at the next tick iff it is smaller than
/// anything this processor owns or has already forwarded. No hold time, no
/// supersession of queued forwards.
struct FilterState {
    ProcessorState core;
    std::deque<Name> outbox;

    friend bool operator==(const FilterState&, const FilterState&) = default;
};

struct FilterTransition {
    FilterState state;
    std::vector<ProtocolAction> actions;
};

FilterTransition filter_awake(const FilterState& state);
FilterTransition filter_tick(const FilterState& state, std::optional<Name> incoming);
FilterTransition filter_receive_control(const FilterState& state, const Message& msg);

}  // namespace ringelect
