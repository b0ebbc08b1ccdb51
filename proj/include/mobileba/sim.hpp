#pragma once

#include "mobileba/adversary.hpp"
#include "mobileba/scenario.hpp"
#include "mobileba/trace.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobileba::sim
{

/// The adversary broke the capability model (too many processors, non-adjacent recipients).
class StrategyViolation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Scenario
{
    Setup setup;
    adv::StrategyFactory strategy;
    std::uint64_t seed = 0;
};

/// Recipients the protocol schedules for `p` in physical round r.
std::vector<ProcessorId> scheduled_recipients(const Setup &setup, ProcessorId p, int round);
/// Honest outgoing payloads of a processor holding `state` in physical round r.
Outbox honest_outbox(const Setup &setup, ProcessorId p, const ProcessorState &state, int round);
/// Honest step-4 transition of `p` on the messages it received in physical round r.
ProcessorState honest_transition(const Setup &setup, ProcessorId p, const ProcessorState &state, const Inbox &received,
                                 int round);

/// Synchronous round engine. step() runs the five stages of one round; the
/// stages are public so several engines can be advanced in lock-step.
class Engine
{
public:
    Engine(Setup setup, std::unique_ptr<adv::Strategy> strategy);
    explicit Engine(const Scenario &scenario);

    const Setup &setup() const { return setup_; }
    int rounds_done() const { return static_cast<int>(trace_.rounds.size()); }
    bool done() const { return rounds_done() >= setup_.rounds; }

    void select();
    void emit_honest();
    void emit_forged();
    void deliver();
    void update_honest();
    void apply_rewrites();
    void step();
    Trace run_to_end();

    // Available once the corresponding stage of the current round has run.
    const Outbox &honest_out(ProcessorId p) const { return honest_out_.at(p.slot()); }
    const ProcessorState &honest_next(ProcessorId p) const { return next_.at(p.slot()); }
    const std::vector<ProcessorId> &controlled() const { return controlled_; }

    const std::vector<ProcessorState> &states() const { return states_; }
    const Trace &trace() const { return trace_; }

private:
    enum class Stage
    {
        Idle,
        Selected,
        HonestEmitted,
        Emitted,
        Delivered,
        Updated,
    };

    void expect(Stage stage, const char *what) const;
    adv::AdversaryView view() const;

    Setup setup_;
    std::unique_ptr<adv::Strategy> strategy_;
    Stage stage_ = Stage::Idle;
    int round_ = 0;
    std::vector<ProcessorState> states_;
    std::vector<ProcessorId> controlled_;
    std::vector<Outbox> honest_out_;
    std::vector<Outbox> out_;
    std::vector<Inbox> inbox_;
    std::vector<ProcessorState> next_;
    Trace trace_;
};

Trace run(const Scenario &scenario);

enum class Status
{
    Pass,
    Fail,
    Vacuous,
};

std::string to_string(Status s);

struct Verdict
{
    Status mba1prime = Status::Vacuous;
    Status mba2 = Status::Vacuous;
    std::optional<Value> agreed_value;
    std::optional<int> first_stable_round; // 2R, in protocol rounds
    std::optional<bool> stable;            // guarantee held from 2R on; unset when no R exists
    std::vector<std::string> notes;

    bool ok() const { return mba1prime != Status::Fail && mba2 != Status::Fail && stable.value_or(true); }
};

/// Whether p counts as non-faulty for protocol round r (physical rounds rT-K+1..rT).
bool nonfaulty_in_round(const Trace &trace, const Setup &setup, ProcessorId p, int logical_round);
/// Smallest R with p_R non-faulty in physical rounds (2R-2)T-K+1..(2R-2)T+K.
std::optional<int> first_reliable_index(const Trace &trace, const Setup &setup);
bool reliable_index(const Trace &trace, const Setup &setup, int R);

Verdict check_agreement(const Trace &trace, const Setup &setup);
inline Verdict check_agreement(const Trace &trace, const Scenario &scenario)
{
    return check_agreement(trace, scenario.setup);
}

/// Violations of the round-(2R-1) claim, for every qualifying R >= 2.
std::vector<std::string> check_claim(const Trace &trace, const Setup &setup);

struct ScenarioPair
{
    Scenario a;
    Scenario b;
    std::vector<ProcessorId> observers;
    std::shared_ptr<const Trace> script_a;
    std::shared_ptr<const Trace> script_b;
};

struct Divergence
{
    int round;
    ProcessorId observer;
    std::string field; // "received" or "state"
};

struct Indistinguishability
{
    bool identical = true;
    std::optional<Divergence> first;
};

Indistinguishability check_indistinguishable(const ScenarioPair &pair);
Indistinguishability compare_views(const Trace &a, const Trace &b, const std::vector<ProcessorId> &observers);

} // namespace mobileba::sim
