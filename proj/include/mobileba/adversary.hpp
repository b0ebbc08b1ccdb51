#pragma once

#include "mobileba/core.hpp"
#include "mobileba/scenario.hpp"
#include "mobileba/trace.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace mobileba::sim
{
class Engine;
}

namespace mobileba::adv
{

/// What the adversary sees when its hooks run. It is omniscient: the whole
/// trace so far and every processor's state at the start of the round.
struct AdversaryView
{
    const sim::Setup &setup;
    int round;
    const Trace &trace;
    const std::vector<ProcessorState> &states;
    const std::vector<ProcessorId> &controlled; // empty while selecting
};

class Strategy
{
public:
    virtual ~Strategy() = default;

    virtual std::vector<ProcessorId> select_controlled(const AdversaryView &view) = 0;
    /// Outgoing payloads of a controlled processor; `honest` is what it would have sent.
    virtual Outbox forge_messages(ProcessorId p, const Outbox &honest, const AdversaryView &view);
    /// Stored state of a controlled processor after the round.
    virtual ProcessorState rewrite_state(ProcessorId p, const ProcessorState &honest_next, const AdversaryView &view);
};

using StrategyFactory = std::function<std::unique_ptr<Strategy>(const sim::Setup &)>;

/// How a controlled processor fills its messages.
struct LieRule
{
    enum class Kind
    {
        Constant,       // every value replaced by v0
        Split,          // recipients 1..ceil(n/2) see v0, the rest v1
        Random,         // fresh random values per recipient
        Counterfactual, // what an honest run with source value v0 would send
    };

    Kind kind = Kind::Constant;
    Value v0 = Value::plain(0);
    Value v1 = Value::plain(1);
    std::uint64_t seed = 0;

    static LieRule constant(Value v) { return {Kind::Constant, v, v, 0}; }
    static LieRule split(Value v0, Value v1) { return {Kind::Split, v0, v1, 0}; }
    static LieRule random(std::uint64_t seed) { return {Kind::Random, Value::plain(0), Value::plain(1), seed}; }
    static LieRule counterfactual(Value fake) { return {Kind::Counterfactual, fake, fake, 0}; }
};

/// Fault-free run of the same setup with a different source value, stepped on demand.
class CounterfactualRun
{
public:
    CounterfactualRun(const sim::Setup &setup, Value fake);
    ~CounterfactualRun();
    CounterfactualRun(CounterfactualRun &&) noexcept;
    CounterfactualRun &operator=(CounterfactualRun &&) noexcept;

    Outbox outbox(ProcessorId p, int round);
    const ProcessorState &state_after(ProcessorId p, int round);

private:
    const RoundTrace &at(int round);

    std::unique_ptr<sim::Engine> engine_;
};

/// Replaces every value inside a payload (including relayed copies).
Payload map_values(const Payload &payload, const std::function<Value(Value)> &f);

StrategyFactory strategy_none();
StrategyFactory strategy_static(std::vector<ProcessorId> set, LieRule rule);
/// Controls X in odd rounds and Y in even rounds; lies and plants state from the
/// fault-free run with source value `fake`.
StrategyFactory strategy_alternating(std::vector<ProcessorId> x, std::vector<ProcessorId> y, Value fake);
/// Controlled set per round (round r uses sets[r-1]; nothing after the list ends).
StrategyFactory strategy_scheduled(std::vector<std::vector<ProcessorId>> sets, LieRule rule);
/// Seeded random mobile adversary mixing garbage, counterfactual and split lies.
StrategyFactory strategy_random(std::uint64_t seed);
/// Replays the controlled sets, messages and planted states recorded in a trace.
StrategyFactory strategy_scripted(std::shared_ptr<const Trace> script);

} // namespace mobileba::adv
