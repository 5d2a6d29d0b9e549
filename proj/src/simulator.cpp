#include "ringelect/simulator.hpp"

#include <sstream>

namespace ringelect {

namespace {

std::string describe(const Message& msg)
{
    if (const auto* e = std::get_if<ElectionMsg>(&msg)) {
        return "election:" + std::to_string(e->carried.value);
    }
    return std::holds_alternative<WakeupMsg>(msg) ? "wakeup" : "sleepwell";
}

}  // namespace

bool EventOrder::operator()(const SimEvent& a, const SimEvent& b) const
{
    if (a.time != b.time) {
        return a.time < b.time;
    }
    if (a.kind != b.kind) {
        return a.kind < b.kind;
    }
    if (a.pos != b.pos) {
        return a.pos < b.pos;
    }
    return a.seq < b.seq;
}

std::string format_trace_line(const BigInt& time, const std::string& kind, std::size_t pos, const std::string& detail)
{
    return "time=" + time.str() + " kind=" + kind + " pos=" + std::to_string(pos) + " detail=" + detail;
}

Simulation::Simulation(RingConfig config, SimOptions options) : config_(std::move(config)), options_(options)
{
    require_valid(config_);
    min_name_ = config_.min_name();

    const BigInt f_l = options_.strategy == Strategy::Filter ? BigInt(1) : eval_delay(config_.policy, min_name_, min_name_);
    const BigInt n = config_.size();
    event_budget_ = 64 * n * n * (f_l + 2);

    nodes_.resize(config_.size());
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
        nodes_[p].state.core = ProcessorState::unwoken(config_.names[p]);
    }
    outcome_.ticks_elapsed.assign(config_.size(), BigInt(0));

    for (const auto& w : config_.wake) {
        SimEvent ev;
        ev.time = w.time;
        ev.kind = EventKind::SpontaneousWake;
        ev.pos = w.pos;
        schedule(std::move(ev));
    }
}

void Simulation::schedule(SimEvent ev)
{
    ev.seq = next_seq_++;
    if (ev.kind == EventKind::LocalTick) {
        nodes_[ev.pos].scheduled_tick = ev;
    }
    queue_.insert(std::move(ev));
}

std::optional<SimEvent> Simulation::peek() const
{
    if (queue_.empty()) {
        return std::nullopt;
    }
    return *queue_.begin();
}

SimEvent Simulation::step()
{
    if (halted_) {
        throw std::logic_error("step: simulation already halted");
    }
    if (queue_.empty()) {
        throw InvariantFault("event queue drained before the winner halted");
    }
    SimEvent ev = *queue_.begin();
    queue_.erase(queue_.begin());
    if (ev.kind == EventKind::LocalTick) {
        nodes_[ev.pos].scheduled_tick.reset();
    }

    ++outcome_.events;
    if (outcome_.events > event_budget_) {
        fault(ev, "event budget of " + event_budget_.str() + " exhausted");
    }

    try {
        process(ev);
    } catch (const ProtocolViolation& e) {
        fault(ev, e.what());
    } catch (const PolicyError& e) {
        fault(ev, e.what());
    }
    return ev;
}

const Outcome& Simulation::run()
{
    while (!halted_) {
        step();
    }
    return outcome_;
}

const Outcome& Simulation::outcome() const
{
    if (!halted_) {
        throw std::logic_error("outcome: simulation has not halted");
    }
    return outcome_;
}

void Simulation::process(const SimEvent& ev)
{
    switch (ev.kind) {
    case EventKind::SpontaneousWake:
        if (!first_wake_seen_) {
            first_wake_seen_ = true;
            outcome_.first_wake = ev.time;
        }
        if (nodes_[ev.pos].state.core.mode == Mode::Unwoken) {
            log(ev.time, "WAKE", ev.pos, "spontaneous");
            wake(ev.pos, ev.time);
        } else {
            log(ev.time, "WAKE", ev.pos, "ignored");
        }
        break;
    case EventKind::Arrival:
        on_arrival(ev);
        break;
    case EventKind::LocalTick:
        on_tick(ev);
        break;
    }
}

void Simulation::wake(std::size_t pos, const BigInt& now)
{
    Node& node = nodes_[pos];
    std::vector<ProtocolAction> actions;
    if (options_.strategy == Strategy::Clocked) {
        Transition t = awake_init(node.state.core);
        node.state.core = t.state;
        actions = std::move(t.actions);
    } else {
        FilterTransition t = filter_awake(node.state);
        node.state = t.state;
        actions = std::move(t.actions);
    }
    node.wake_time = now;
    node.last_tick = 0;
    apply(pos, now, actions, std::nullopt);
    reschedule_tick(pos);
}

void Simulation::on_arrival(const SimEvent& ev)
{
    Node& node = nodes_[ev.pos];
    const Message& msg = *ev.message;
    log(ev.time, "ARRIVE", ev.pos, describe(msg));

    if (const auto* e = std::get_if<ElectionMsg>(&msg)) {
        if (node.state.core.mode != Mode::Awake) {
            fault(ev, "election message reached a processor that is not awake");
        }
        node.inbox.push_back({e->carried, ev.time});
        reschedule_tick(ev.pos);
        return;
    }

    const bool was_unwoken = node.state.core.mode == Mode::Unwoken;
    std::vector<ProtocolAction> actions;
    if (options_.strategy == Strategy::Clocked) {
        Transition t = receive_control(node.state.core, msg);
        node.state.core = t.state;
        actions = std::move(t.actions);
    } else {
        FilterTransition t = filter_receive_control(node.state, msg);
        node.state = t.state;
        actions = std::move(t.actions);
    }
    if (was_unwoken && node.state.core.mode == Mode::Awake) {
        node.wake_time = ev.time;
        node.last_tick = 0;
    }
    const bool finished_here = node.state.core.mode == Mode::Done && !actions.empty() &&
                               std::holds_alternative<DeclareElected>(actions.front());
    apply(ev.pos, ev.time, actions, std::nullopt);
    if (halted_) {
        return;
    }
    if (finished_here) {
        // Ticks strictly between waking and now; a tick at exactly `now` comes
        // after the arrival and never runs.
        const BigInt span = ev.time - node.wake_time;
        const BigInt ticks = span > 0 ? ceil_div(span, config_.tick_len[ev.pos]) - 1 : BigInt(0);
        mark_done(ev.pos, ev.time, ticks);
    } else {
        reschedule_tick(ev.pos);
    }
}

void Simulation::on_tick(const SimEvent& ev)
{
    Node& node = nodes_[ev.pos];
    if (node.state.core.mode != Mode::Awake) {
        fault(ev, "tick scheduled for a processor that is not awake");
    }
    const BigInt& j = ev.tick_index;

    std::size_t readable = 0;
    while (readable < node.inbox.size() && node.inbox[readable].arrival < ev.time) {
        ++readable;
    }
    if (readable > outcome_.max_readable_backlog) {
        outcome_.max_readable_backlog = readable;
    }
    std::optional<Name> incoming;
    if (readable > 0) {
        incoming = node.inbox.front().carried;
        node.inbox.pop_front();
    }

    std::vector<ProtocolAction> actions;
    if (options_.strategy == Strategy::Clocked) {
        ProcessorState& core = node.state.core;
        // Ticks skipped since the last materialized one each counted the timer down.
        core.timer -= j - node.last_tick - 1;
        if (incoming && *incoming < core.k && core.pending_send && core.k != core.own) {
            ++outcome_.overtakes;
        }
        Transition t = tick_step(core, incoming, config_.policy);
        core = t.state;
        actions = std::move(t.actions);
    } else {
        FilterTransition t = filter_tick(node.state, incoming);
        node.state = t.state;
        actions = std::move(t.actions);
    }
    node.last_tick = j;
    log(ev.time, "TICK", ev.pos, incoming ? "read:" + std::to_string(incoming->value) : std::string("idle"));

    apply(ev.pos, ev.time, actions, j);
    if (halted_) {
        return;
    }
    if (node.state.core.mode == Mode::Done) {
        mark_done(ev.pos, ev.time, j);
    } else {
        reschedule_tick(ev.pos);
    }
}

void Simulation::apply(std::size_t pos, const BigInt& now, const std::vector<ProtocolAction>& actions,
                       const std::optional<BigInt>& tick_index)
{
    const std::size_t next = (pos + 1) % config_.size();
    const BigInt arrival = now + config_.link_delay[pos];
    const Name own = config_.names[pos];

    auto send = [&](Message msg) {
        const MessageBits b = message_bits(msg);
        outcome_.bits.framing += b.framing;
        outcome_.bits.payload += b.payload;
        log(now, "SEND", pos, describe(msg));
        SimEvent ev;
        ev.time = arrival;
        ev.kind = EventKind::Arrival;
        ev.pos = next;
        ev.message = std::move(msg);
        schedule(std::move(ev));
    };

    for (const auto& action : actions) {
        if (std::holds_alternative<SendWakeup>(action)) {
            ++outcome_.passes.wakeup;
            send(WakeupMsg{});
        } else if (const auto* se = std::get_if<SendElection>(&action)) {
            ++outcome_.passes.election;
            ++outcome_.election_passes_by_origin[se->name];
            if (se->name == min_name_ && own == min_name_ && !winner_emitted_) {
                winner_emitted_ = true;
                outcome_.winner_emit_time = now;
                outcome_.winner_emit_tick = tick_index.value_or(BigInt(0));
            }
            send(ElectionMsg{se->name});
        } else if (std::holds_alternative<SendSleepwell>(action)) {
            if (nodes_[pos].state.core.k != min_name_) {
                std::ostringstream os;
                os << "processor " << own << " forwards the sleepwell with k = " << nodes_[pos].state.core.k
                   << ", smallest name is " << min_name_;
                fault(now, pos, os.str());
            }
            ++outcome_.passes.sleepwell;
            send(SleepwellMsg{});
        } else if (const auto* de = std::get_if<DeclareElected>(&action)) {
            if (de->name != min_name_) {
                std::ostringstream os;
                os << "processor " << own << " declared " << de->name << " elected, smallest name is " << min_name_;
                fault(now, pos, os.str());
            }
            if (tick_index && own == de->name) {
                outcome_.winner_return_time = now;
                outcome_.winner_return_tick = *tick_index;
            }
        } else if (std::holds_alternative<Halt>(action)) {
            finish(now);
        }
    }
}

void Simulation::reschedule_tick(std::size_t pos)
{
    Node& node = nodes_[pos];
    if (node.scheduled_tick) {
        queue_.erase(*node.scheduled_tick);
        node.scheduled_tick.reset();
    }
    if (node.state.core.mode != Mode::Awake) {
        return;
    }

    std::optional<BigInt> next;
    if (options_.strategy == Strategy::Clocked) {
        if (node.state.core.pending_send) {
            if (node.state.core.timer < 1) {
                fault(node.wake_time, pos, "pending send with a non-positive timer");
            }
            next = node.last_tick + node.state.core.timer;
        }
    } else if (!node.state.outbox.empty()) {
        next = node.last_tick + 1;
    }
    if (!node.inbox.empty()) {
        const BigInt& tau = config_.tick_len[pos];
        BigInt readable_at = floor_div(node.inbox.front().arrival - node.wake_time, tau) + 1;
        if (readable_at <= node.last_tick) {
            readable_at = node.last_tick + 1;
        }
        if (!next || readable_at < *next) {
            next = std::move(readable_at);
        }
    }
    if (!next) {
        return;
    }
    SimEvent ev;
    ev.time = node.wake_time + *next * config_.tick_len[pos];
    ev.kind = EventKind::LocalTick;
    ev.pos = pos;
    ev.tick_index = *next;
    schedule(std::move(ev));
}

void Simulation::mark_done(std::size_t pos, const BigInt& now, const BigInt& ticks)
{
    Node& node = nodes_[pos];
    if (!node.inbox.empty()) {
        fault(now, pos, "processor finished with unread election messages");
    }
    outcome_.ticks_elapsed[pos] = ticks;
    if (node.scheduled_tick) {
        queue_.erase(*node.scheduled_tick);
        node.scheduled_tick.reset();
    }
}

void Simulation::finish(const BigInt& now)
{
    halted_ = true;
    outcome_.completion = now;
    outcome_.winner = min_name_;
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
        const ProcessorState& s = nodes_[p].state.core;
        if (s.mode != Mode::Done || s.elected != min_name_) {
            fault(now, p, "halted while a processor has not learned the winner");
        }
    }
    std::size_t winner_pos = 0;
    while (config_.names[winner_pos] != min_name_) {
        ++winner_pos;
    }
    log(now, "HALT", winner_pos, "winner:" + std::to_string(min_name_.value));
}

void Simulation::log(const BigInt& time, const char* kind, std::size_t pos, const std::string& detail)
{
    if (options_.trace) {
        outcome_.trace.push_back(format_trace_line(time, kind, pos, detail));
    }
}

void Simulation::fault(const SimEvent& ev, const std::string& what) const { fault(ev.time, ev.pos, what); }

void Simulation::fault(const BigInt& time, std::size_t pos, const std::string& what) const
{
    throw InvariantFault("invariant fault at time " + time.str() + ", position " + std::to_string(pos) + ": " + what);
}

Outcome run_election(const RingConfig& config, SimOptions options)
{
    Simulation sim(config, options);
    return sim.run();
}

}  // namespace ringelect
