#include "mobileba/adversary.hpp"

#include "mobileba/sim.hpp"

#include <algorithm>
#include <random>

namespace mobileba::adv
{

Outbox Strategy::forge_messages(ProcessorId, const Outbox &honest, const AdversaryView &)
{
    return honest;
}

ProcessorState Strategy::rewrite_state(ProcessorId, const ProcessorState &honest_next, const AdversaryView &)
{
    return honest_next;
}

Payload map_values(const Payload &payload, const std::function<Value(Value)> &f)
{
    return std::visit(
        [&](const auto &p) -> Payload {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Value>)
                return f(p);
            else if constexpr (std::is_same_v<T, PairMessage>)
                return PairMessage{f(p.a), f(p.b)};
            else
            {
                RelayBundle out = p;
                for (RelayCopy &c : out)
                    c.payload = PairMessage{f(c.payload.a), f(c.payload.b)};
                return out;
            }
        },
        payload);
}

CounterfactualRun::CounterfactualRun(const sim::Setup &setup, Value fake)
{
    sim::Setup alt = setup;
    alt.source_value = fake;
    engine_ = std::make_unique<sim::Engine>(alt, strategy_none()(alt));
}

CounterfactualRun::~CounterfactualRun() = default;
CounterfactualRun::CounterfactualRun(CounterfactualRun &&) noexcept = default;
CounterfactualRun &CounterfactualRun::operator=(CounterfactualRun &&) noexcept = default;

const RoundTrace &CounterfactualRun::at(int round)
{
    if (round < 1 || round > engine_->setup().rounds)
        throw PreconditionError("counterfactual round out of range");
    while (engine_->rounds_done() < round)
        engine_->step();
    return engine_->trace().rounds[static_cast<std::size_t>(round - 1)];
}

Outbox CounterfactualRun::outbox(ProcessorId p, int round)
{
    Outbox out;
    for (const auto &[edge, payload] : at(round).sent)
        if (edge.first == p)
            out.emplace(edge.second, payload);
    return out;
}

const ProcessorState &CounterfactualRun::state_after(ProcessorId p, int round)
{
    return at(round).states_after.at(p.slot());
}

namespace
{

void check_size(const std::vector<ProcessorId> &set, const sim::Setup &setup, const char *what)
{
    if (static_cast<int>(set.size()) > setup.params.m())
    {
        throw PreconditionError(std::string(what) + " has " + std::to_string(set.size()) +
                                " processors, more than m=" + std::to_string(setup.params.m()));
    }
    for (ProcessorId p : set)
        if (!setup.network.contains(p))
            throw PreconditionError(std::string(what) + " names processor " + std::to_string(p.index) +
                                    " outside 1.." + std::to_string(setup.n()));
}

Value random_value(std::mt19937_64 &rng, int alphabet)
{
    std::uniform_int_distribution<int> pick(-2, alphabet - 1);
    int k = pick(rng);
    if (k == -2)
        return Value::bot0();
    if (k == -1)
        return Value::bot2();
    return Value::plain(k);
}

Value random_plain(std::mt19937_64 &rng, int alphabet)
{
    return Value::plain(std::uniform_int_distribution<int>(0, alphabet - 1)(rng));
}

int half(int n)
{
    return (n + 1) / 2;
}

/// Applies a lie rule to one processor's outbox. Counterfactual lies need the run.
class LiePainter
{
public:
    LiePainter(const sim::Setup &setup, LieRule rule) : rule_(rule), rng_(rule.seed)
    {
        if (rule.kind == LieRule::Kind::Counterfactual)
            cf_.emplace(setup, rule.v0);
    }

    Outbox paint(ProcessorId p, const Outbox &honest, const AdversaryView &view)
    {
        if (rule_.kind == LieRule::Kind::Counterfactual)
            return cf_->outbox(p, view.round);
        Outbox out;
        for (const auto &[q, payload] : honest)
        {
            switch (rule_.kind)
            {
            case LieRule::Kind::Constant:
                out.emplace(q, map_values(payload, [&](Value) { return rule_.v0; }));
                break;
            case LieRule::Kind::Split: {
                Value v = q.index <= half(view.setup.n()) ? rule_.v0 : rule_.v1;
                out.emplace(q, map_values(payload, [&](Value) { return v; }));
                break;
            }
            case LieRule::Kind::Random: {
                const int alphabet = view.setup.params.alphabet_size();
                out.emplace(q, map_values(payload, [&](Value) { return random_value(rng_, alphabet); }));
                break;
            }
            case LieRule::Kind::Counterfactual:
                break;
            }
        }
        return out;
    }

    ProcessorState plant(ProcessorId p, const ProcessorState &honest_next, const AdversaryView &view)
    {
        if (cf_)
            return cf_->state_after(p, view.round);
        return honest_next;
    }

private:
    LieRule rule_;
    std::mt19937_64 rng_;
    std::optional<CounterfactualRun> cf_;
};

class NoneStrategy : public Strategy
{
public:
    std::vector<ProcessorId> select_controlled(const AdversaryView &) override { return {}; }
};

class StaticStrategy : public Strategy
{
public:
    StaticStrategy(const sim::Setup &setup, std::vector<ProcessorId> set, LieRule rule)
        : set_(std::move(set)), painter_(setup, rule)
    {
    }

    std::vector<ProcessorId> select_controlled(const AdversaryView &) override { return set_; }

    Outbox forge_messages(ProcessorId p, const Outbox &honest, const AdversaryView &view) override
    {
        return painter_.paint(p, honest, view);
    }

    ProcessorState rewrite_state(ProcessorId p, const ProcessorState &next, const AdversaryView &view) override
    {
        return painter_.plant(p, next, view);
    }

private:
    std::vector<ProcessorId> set_;
    LiePainter painter_;
};

class ScheduledStrategy : public Strategy
{
public:
    ScheduledStrategy(const sim::Setup &setup, std::vector<std::vector<ProcessorId>> sets, LieRule rule)
        : sets_(std::move(sets)), painter_(setup, rule)
    {
    }

    std::vector<ProcessorId> select_controlled(const AdversaryView &view) override
    {
        if (view.round > static_cast<int>(sets_.size()))
            return {};
        return sets_[static_cast<std::size_t>(view.round - 1)];
    }

    Outbox forge_messages(ProcessorId p, const Outbox &honest, const AdversaryView &view) override
    {
        return painter_.paint(p, honest, view);
    }

    ProcessorState rewrite_state(ProcessorId p, const ProcessorState &next, const AdversaryView &view) override
    {
        return painter_.plant(p, next, view);
    }

private:
    std::vector<std::vector<ProcessorId>> sets_;
    LiePainter painter_;
};

class RandomStrategy : public Strategy
{
public:
    RandomStrategy(const sim::Setup &setup, std::uint64_t seed) : rng_(seed)
    {
        const int n = setup.n();
        const int m = std::min(setup.params.m(), n);
        alphabet_ = setup.params.alphabet_size();
        std::vector<ProcessorId> everyone;
        for (int p = 1; p <= n; ++p)
            everyone.emplace_back(p);
        std::shuffle(everyone.begin(), everyone.end(), rng_);
        const int size = std::uniform_int_distribution<int>(m, n)(rng_);
        pool_.assign(everyone.begin(), everyone.begin() + size);
        m_ = m;

        Value fake = random_plain(rng_, alphabet_);
        if (alphabet_ > 1)
            while (fake == setup.source_value)
                fake = random_plain(rng_, alphabet_);
        cf_.emplace(setup, fake);
    }

    std::vector<ProcessorId> select_controlled(const AdversaryView &view) override
    {
        std::vector<ProcessorId> chosen;
        if (m_ == 0)
            return chosen;
        if (view.round == 1 && std::bernoulli_distribution(0.5)(rng_))
            chosen.push_back(kSource);
        std::vector<ProcessorId> rest;
        for (ProcessorId p : pool_)
            if (std::find(chosen.begin(), chosen.end(), p) == chosen.end())
                rest.push_back(p);
        std::shuffle(rest.begin(), rest.end(), rng_);
        for (ProcessorId p : rest)
        {
            if (static_cast<int>(chosen.size()) >= m_)
                break;
            chosen.push_back(p);
        }
        return chosen;
    }

    Outbox forge_messages(ProcessorId p, const Outbox &honest, const AdversaryView &view) override
    {
        const int mode = std::uniform_int_distribution<int>(0, 2)(rng_);
        if (mode == 1)
            return cf_->outbox(p, view.round);
        Outbox out;
        if (mode == 0)
        {
            for (const auto &[q, payload] : honest)
            {
                Payload garbage = map_values(payload, [&](Value) { return random_value(rng_, alphabet_); });
                if (auto *bundle = std::get_if<RelayBundle>(&garbage))
                    bundle->push_back(forged_copy(view.setup.n()));
                out.emplace(q, std::move(garbage));
            }
            return out;
        }
        const Value v0 = random_plain(rng_, alphabet_);
        const Value v1 = random_plain(rng_, alphabet_);
        for (const auto &[q, payload] : honest)
        {
            Value v = q.index <= half(view.setup.n()) ? v0 : v1;
            out.emplace(q, map_values(payload, [&](Value) { return v; }));
        }
        return out;
    }

    ProcessorState rewrite_state(ProcessorId p, const ProcessorState &next, const AdversaryView &view) override
    {
        if (std::bernoulli_distribution(0.5)(rng_))
            return cf_->state_after(p, view.round);
        ProcessorState s = next;
        s.a = random_value(rng_, alphabet_);
        s.b = random_value(rng_, alphabet_);
        s.A.clear();
        s.B.clear();
        for (int k = -1; k < alphabet_; ++k)
        {
            Value v = k < 0 ? Value::bot2() : Value::plain(k);
            if (std::bernoulli_distribution(0.3)(rng_))
                s.A.push_back(v);
            if (std::bernoulli_distribution(0.3)(rng_))
                s.B.push_back(v);
        }
        if (std::bernoulli_distribution(0.5)(rng_))
            s.decided = random_value(rng_, alphabet_);
        else
            s.decided.reset();
        for (auto *slots : {&s.relay.held, &s.relay.inbox})
            for (auto &[slot, msg] : *slots)
                msg = PairMessage{random_value(rng_, alphabet_), random_value(rng_, alphabet_)};
        return s;
    }

private:
    RelayCopy forged_copy(int n)
    {
        std::uniform_int_distribution<int> who(1, n);
        std::uniform_int_distribution<int> copy(0, 8);
        return RelayCopy{ProcessorId(who(rng_)), ProcessorId(who(rng_)), copy(rng_),
                         PairMessage{random_value(rng_, alphabet_), random_value(rng_, alphabet_)}};
    }

    std::mt19937_64 rng_;
    std::vector<ProcessorId> pool_;
    int m_ = 0;
    int alphabet_ = 2;
    std::optional<CounterfactualRun> cf_;
};

class ScriptedStrategy : public Strategy
{
public:
    explicit ScriptedStrategy(std::shared_ptr<const Trace> script) : script_(std::move(script)) {}

    std::vector<ProcessorId> select_controlled(const AdversaryView &view) override
    {
        if (view.round > static_cast<int>(script_->rounds.size()))
            return {};
        return script_->rounds[static_cast<std::size_t>(view.round - 1)].controlled;
    }

    Outbox forge_messages(ProcessorId p, const Outbox &, const AdversaryView &view) override
    {
        Outbox out;
        for (const auto &[edge, payload] : script_->rounds[static_cast<std::size_t>(view.round - 1)].sent)
            if (edge.first == p)
                out.emplace(edge.second, payload);
        return out;
    }

    ProcessorState rewrite_state(ProcessorId p, const ProcessorState &, const AdversaryView &view) override
    {
        return script_->rounds[static_cast<std::size_t>(view.round - 1)].states_after.at(p.slot());
    }

private:
    std::shared_ptr<const Trace> script_;
};

} // namespace

StrategyFactory strategy_none()
{
    return [](const sim::Setup &) { return std::make_unique<NoneStrategy>(); };
}

StrategyFactory strategy_static(std::vector<ProcessorId> set, LieRule rule)
{
    return [set = std::move(set), rule](const sim::Setup &setup) -> std::unique_ptr<Strategy> {
        check_size(set, setup, "static set");
        return std::make_unique<StaticStrategy>(setup, set, rule);
    };
}

StrategyFactory strategy_alternating(std::vector<ProcessorId> x, std::vector<ProcessorId> y, Value fake)
{
    return [x = std::move(x), y = std::move(y), fake](const sim::Setup &setup) -> std::unique_ptr<Strategy> {
        check_size(x, setup, "odd-round set");
        check_size(y, setup, "even-round set");
        std::vector<std::vector<ProcessorId>> sets;
        for (int r = 1; r <= setup.rounds; ++r)
            sets.push_back(r % 2 == 1 ? x : y);
        return std::make_unique<ScheduledStrategy>(setup, std::move(sets), LieRule::counterfactual(fake));
    };
}

StrategyFactory strategy_scheduled(std::vector<std::vector<ProcessorId>> sets, LieRule rule)
{
    return [sets = std::move(sets), rule](const sim::Setup &setup) -> std::unique_ptr<Strategy> {
        for (const auto &s : sets)
            check_size(s, setup, "scheduled set");
        return std::make_unique<ScheduledStrategy>(setup, sets, rule);
    };
}

StrategyFactory strategy_random(std::uint64_t seed)
{
    return [seed](const sim::Setup &setup) -> std::unique_ptr<Strategy> {
        return std::make_unique<RandomStrategy>(setup, seed);
    };
}

StrategyFactory strategy_scripted(std::shared_ptr<const Trace> script)
{
    if (!script)
        throw PreconditionError("scripted strategy needs a trace");
    return [script](const sim::Setup &setup) -> std::unique_ptr<Strategy> {
        if (script->header.n != setup.n())
            throw PreconditionError("script was recorded for a different n");
        return std::make_unique<ScriptedStrategy>(script);
    };
}

} // namespace mobileba::adv
