#pragma once

#include "ringelect/codec.hpp"
#include "ringelect/config.hpp"
#include "ringelect/message.hpp"
#include "ringelect/numeric.hpp"
#include "ringelect/protocol.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringelect {

/// Raised when the run breaks a protocol invariant (winner branch with k != own,
/// election message at a finished processor, event budget exhausted).
class InvariantFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric values give the tiebreak order at equal time.
enum class EventKind : int { Arrival = 0, SpontaneousWake = 1, LocalTick = 2 };

struct SimEvent {
    BigInt time;
    EventKind kind = EventKind::Arrival;
    std::size_t pos = 0;
    std::uint64_t seq = 0;
    std::optional<Message> message;  // Arrival only
    BigInt tick_index = 0;           // LocalTick only: ticks since the processor woke

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct EventOrder {
    bool operator()(const SimEvent& a, const SimEvent& b) const;
};

struct PassCounts {
    std::uint64_t wakeup = 0;
    std::uint64_t election = 0;
    std::uint64_t sleepwell = 0;

    std::uint64_t total() const noexcept { return wakeup + election + sleepwell; }
    friend bool operator==(const PassCounts&, const PassCounts&) = default;
};

struct Outcome {
    Name winner;
    PassCounts passes;
    std::map<Name, std::uint64_t> election_passes_by_origin;
    MessageBits bits;
    BigInt first_wake;
    BigInt completion;                // absolute time of the winner's Halt
    std::vector<BigInt> ticks_elapsed;  // per position, local ticks from waking to Done

    // Winner instrumentation: emission of M_l and the tick it came home.
    BigInt winner_emit_time;
    BigInt winner_return_time;
    BigInt winner_emit_tick;
    BigInt winner_return_tick;

    std::uint64_t overtakes = 0;         // in-flight messages superseded while held
    std::size_t max_readable_backlog = 0;  // most election messages readable at one tick
    std::uint64_t events = 0;
    std::vector<std::string> trace;

    BigInt winner_circuit_ticks() const { return winner_return_tick - winner_emit_tick; }
    BigInt winner_circle_time() const { return winner_return_time - winner_emit_time; }

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

enum class Strategy {
    Clocked,  // the delay-policy protocol
    Filter,   // forward-if-smaller baseline, no hold time
};

struct SimOptions {
    Strategy strategy = Strategy::Clocked;
    bool trace = false;
};

/// Event-driven run of one ring. Local ticks are only materialized when they
/// matter (a readable message or an expiring timer); the ticks in between are
/// applied arithmetically to the timer.
class Simulation {
public:
    /// Throws ConfigError if the config does not validate.
    explicit Simulation(RingConfig config, SimOptions options = {});

    bool halted() const noexcept { return halted_; }

    /// Processes exactly one event. Throws std::logic_error once halted and
    /// InvariantFault when the protocol misbehaves.
    SimEvent step();

    std::optional<SimEvent> peek() const;

    /// Steps to completion and returns the outcome.
    const Outcome& run();

    /// Valid once halted.
    const Outcome& outcome() const;

    const ProcessorState& processor(std::size_t pos) const { return nodes_.at(pos).state.core; }
    const RingConfig& config() const noexcept { return config_; }

private:
    struct InFlight {
        Name carried;
        BigInt arrival;
    };

    struct Node {
        FilterState state;  // the clocked protocol only uses state.core
        BigInt wake_time;
        BigInt last_tick = 0;
        std::deque<InFlight> inbox;
        std::optional<SimEvent> scheduled_tick;
    };

    void schedule(SimEvent ev);
    void process(const SimEvent& ev);
    void wake(std::size_t pos, const BigInt& now);
    void on_arrival(const SimEvent& ev);
    void on_tick(const SimEvent& ev);
    void apply(std::size_t pos, const BigInt& now, const std::vector<ProtocolAction>& actions,
               const std::optional<BigInt>& tick_index);
    void reschedule_tick(std::size_t pos);
    void mark_done(std::size_t pos, const BigInt& now, const BigInt& ticks);
    void finish(const BigInt& now);
    void log(const BigInt& time, const char* kind, std::size_t pos, const std::string& detail);
    [[noreturn]] void fault(const SimEvent& ev, const std::string& what) const;
    [[noreturn]] void fault(const BigInt& time, std::size_t pos, const std::string& what) const;

    RingConfig config_;
    SimOptions options_;
    Name min_name_;
    BigInt event_budget_;
    std::vector<Node> nodes_;
    std::set<SimEvent, EventOrder> queue_;
    std::uint64_t next_seq_ = 0;
    bool halted_ = false;
    bool first_wake_seen_ = false;
    bool winner_emitted_ = false;
    Outcome outcome_;
};

Outcome run_election(const RingConfig& config, SimOptions options = {});

/// `time=<int> kind=<WAKE|ARRIVE|TICK|SEND|HALT> pos=<int> detail=<...>`
std::string format_trace_line(const BigInt& time, const std::string& kind, std::size_t pos,
                              const std::string& detail);

}  // namespace ringelect
