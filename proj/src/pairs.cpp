#include "mobileba/pairs.hpp"

#include <algorithm>
#include <array>

namespace mobileba::adv
{

namespace
{

using EngineRefs = std::shared_ptr<std::vector<sim::Engine *>>;

bool member(const std::vector<ProcessorId> &set, ProcessorId p)
{
    return std::find(set.begin(), set.end(), p) != set.end();
}

std::vector<ProcessorId> join(std::vector<ProcessorId> x, const std::vector<ProcessorId> &y)
{
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    return x;
}

/// Controlled processors copy what another engine's honest processors send and store.
/// Engines are referenced by index so the strategy can be built before they exist.
class MirrorStrategy : public Strategy
{
public:
    using Schedule = std::function<std::vector<ProcessorId>(int)>;
    using MessageSource = std::function<int(ProcessorId, ProcessorId)>; // -1 keeps the honest payload
    using StateSource = std::function<int(ProcessorId)>;

    MirrorStrategy(EngineRefs engines, Schedule schedule, MessageSource messages, StateSource states)
        : engines_(std::move(engines)), schedule_(std::move(schedule)), messages_(std::move(messages)),
          states_(std::move(states))
    {
    }

    std::vector<ProcessorId> select_controlled(const AdversaryView &view) override { return schedule_(view.round); }

    Outbox forge_messages(ProcessorId p, const Outbox &honest, const AdversaryView &) override
    {
        Outbox out;
        for (const auto &[q, payload] : honest)
        {
            int from = messages_(p, q);
            out.emplace(q, from < 0 ? payload : engine(from).honest_out(p).at(q));
        }
        return out;
    }

    ProcessorState rewrite_state(ProcessorId p, const ProcessorState &next, const AdversaryView &) override
    {
        int from = states_(p);
        return from < 0 ? next : engine(from).honest_next(p);
    }

private:
    const sim::Engine &engine(int i) const { return *engines_->at(static_cast<std::size_t>(i)); }

    EngineRefs engines_;
    Schedule schedule_;
    MessageSource messages_;
    StateSource states_;
};

std::unique_ptr<Strategy> mirror(EngineRefs refs, MirrorStrategy::Schedule schedule,
                                 MirrorStrategy::MessageSource messages, MirrorStrategy::StateSource states)
{
    return std::make_unique<MirrorStrategy>(std::move(refs), std::move(schedule), std::move(messages),
                                            std::move(states));
}

MirrorStrategy::Schedule alternate(std::vector<ProcessorId> odd, std::vector<ProcessorId> even)
{
    return [odd = std::move(odd), even = std::move(even)](int r) { return r % 2 == 1 ? odd : even; };
}

void lock_step(std::vector<sim::Engine *> &engines)
{
    const int rounds = engines.front()->setup().rounds;
    for (int r = 1; r <= rounds; ++r)
    {
        for (auto *e : engines)
            e->select();
        for (auto *e : engines)
            e->emit_honest();
        for (auto *e : engines)
            e->emit_forged();
        for (auto *e : engines)
            e->deliver();
        for (auto *e : engines)
            e->update_honest();
        for (auto *e : engines)
            e->apply_rewrites();
    }
}

sim::Scenario frozen(const sim::Setup &setup, std::shared_ptr<const Trace> script)
{
    return sim::Scenario{setup, strategy_scripted(std::move(script)), 0};
}

Value other_value(Value v)
{
    return v == Value::plain(0) ? Value::plain(1) : Value::plain(0);
}

Payload perturbed(const Payload &payload, ProcessorId sender, ProcessorId target)
{
    return std::visit(
        [&](const auto &p) -> Payload {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Value>)
                return other_value(p);
            else if constexpr (std::is_same_v<T, PairMessage>)
                return PairMessage{other_value(p.a), p.b};
            else
            {
                RelayBundle out = p;
                if (out.empty())
                    out.push_back(RelayCopy{sender, target, 0, PairMessage{Value::plain(0), Value::plain(0)}});
                else
                    out.front().payload.a = other_value(out.front().payload.a);
                return out;
            }
        },
        payload);
}

} // namespace

FiveSets five_sets(int n, int m)
{
    if (m < 1)
        throw PreconditionError("five-set construction needs m >= 1");
    // sizes dealt in the order S, A, C, B, D; ids handed out contiguously S, A, B, C, D
    std::array<int, 5> size{}; // S, A, B, C, D
    constexpr std::array<int, 5> deal{0, 1, 3, 2, 4};
    for (int p = 0; p < n; ++p)
        ++size[static_cast<std::size_t>(deal[static_cast<std::size_t>(p % 5)])];
    FiveSets sets;
    std::array<std::vector<ProcessorId> *, 5> order{&sets.S, &sets.A, &sets.B, &sets.C, &sets.D};
    int next = 1;
    for (std::size_t i = 0; i < 5; ++i)
    {
        if (size[i] > m)
            throw PreconditionError("n=" + std::to_string(n) + " does not split into five sets of size <= m=" +
                                    std::to_string(m) + " (needs n <= 5m)");
        for (int k = 0; k < size[i]; ++k)
            order[i]->emplace_back(next++);
    }
    return sets;
}

sim::ScenarioPair build_five_set_pair(int n, int m, Value v_s, bool swapped)
{
    if (!v_s.is_plain())
        throw PreconditionError("source value must be a plain symbol");
    if (n > 5 * m)
        throw PreconditionError("five-set construction needs n <= 5m (n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
    if (n <= m + 1)
        throw PreconditionError("five-set construction needs n > m+1");
    const FiveSets sets = five_sets(n, m);
    const Value fake = other_value(v_s);
    const int alphabet = std::max({2, v_s.symbol() + 1, fake.symbol() + 1});
    const auto params = mba::ProtocolParams::unchecked(n, m, alphabet, m);

    const sim::Setup honest = sim::bare_setup(params, v_s, 2 * n);
    sim::Setup mirrored = honest;
    mirrored.source_value = fake;

    auto refs = std::make_shared<std::vector<sim::Engine *>>(3, nullptr);
    const auto ab = join(sets.A, sets.B);
    const auto cd = join(sets.C, sets.D);

    // 0: S lies both ways; 1: true value, A/B alternate; 2: fake value, C/D alternate
    sim::Engine split(honest, mirror(
                                  refs, [S = sets.S](int) { return S; },
                                  [ab, cd](ProcessorId, ProcessorId q) {
                                      if (member(ab, q))
                                          return 2;
                                      if (member(cd, q))
                                          return 1;
                                      return -1;
                                  },
                                  [](ProcessorId) { return -1; }));
    sim::Engine truth(honest, mirror(
                                  refs, alternate(sets.A, sets.B), [](ProcessorId, ProcessorId) { return 0; },
                                  [](ProcessorId) { return 0; }));
    sim::Engine lie(mirrored, mirror(
                                  refs, alternate(sets.C, sets.D), [](ProcessorId, ProcessorId) { return 0; },
                                  [](ProcessorId) { return 0; }));
    *refs = {&split, &truth, &lie};
    lock_step(*refs);

    auto script_a = std::make_shared<const Trace>(split.trace());
    auto script_b = std::make_shared<const Trace>(swapped ? lie.trace() : truth.trace());
    sim::ScenarioPair pair{frozen(honest, script_a), frozen(swapped ? mirrored : honest, script_b),
                           swapped ? ab : cd, script_a, script_b};
    return pair;
}

sim::ScenarioPair build_cutset_pair(const net::Network &g, int m, ProcessorId s, std::vector<ProcessorId> x,
                                    ProcessorId p)
{
    if (m < 1)
        throw PreconditionError("cut-set construction needs m >= 1");
    if (s != kSource)
        throw PreconditionError("the source is processor 1");
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    if (static_cast<int>(x.size()) > 4 * m)
        throw PreconditionError("cut-set has " + std::to_string(x.size()) + " processors, more than 4m=" +
                                std::to_string(4 * m));
    if (member(x, s))
        throw PreconditionError("cut-set contains the source");
    if (!g.contains(p) || p == s || member(x, p))
        throw PreconditionError("observer must be a processor outside the cut-set other than the source");
    if (!net::separates(g, x, s, p))
        throw PreconditionError("cut-set does not separate the source from p" + std::to_string(p.index));

    std::array<std::vector<ProcessorId>, 4> parts; // A, B, C, D
    for (std::size_t i = 0; i < x.size(); ++i)
        parts[i % 4].push_back(x[i]);

    auto scheme = std::make_shared<const relcomm::CommScheme>(
        relcomm::CommScheme::two_round(g, m, relcomm::PlanPolicy::BestEffort));
    auto lifted = relcomm::lift_unchecked(scheme, mba::ProtocolParams::unchecked(g.size(), m, 2, m));
    const sim::Setup zero = sim::lifted_setup(lifted, Value::plain(0));
    const sim::Setup one = sim::lifted_setup(lifted, Value::plain(1));

    auto refs = std::make_shared<std::vector<sim::Engine *>>(2, nullptr);
    sim::Engine first(zero, mirror(
                                refs, alternate(parts[0], parts[1]), [](ProcessorId, ProcessorId) { return 1; },
                                [](ProcessorId) { return 1; }));
    sim::Engine second(one, mirror(
                                refs, alternate(parts[2], parts[3]), [](ProcessorId, ProcessorId) { return 0; },
                                [](ProcessorId) { return 0; }));
    *refs = {&first, &second};
    lock_step(*refs);

    auto script_a = std::make_shared<const Trace>(first.trace());
    auto script_b = std::make_shared<const Trace>(second.trace());
    return sim::ScenarioPair{frozen(zero, script_a), frozen(one, script_b), {p}, script_a, script_b};
}

sim::ScenarioPair perturb_pair(const sim::ScenarioPair &pair, int round, ProcessorId sender, ProcessorId target)
{
    if (!pair.script_b)
        throw PreconditionError("pair has no script to perturb");
    auto script = std::make_shared<Trace>(*pair.script_b);
    if (round < 1 || round > static_cast<int>(script->rounds.size()))
        throw PreconditionError("perturbation round out of range");
    RoundTrace &rt = script->rounds[static_cast<std::size_t>(round - 1)];
    if (!std::binary_search(rt.controlled.begin(), rt.controlled.end(), sender))
        throw PreconditionError("p" + std::to_string(sender.index) + " is not controlled in round " +
                                std::to_string(round));
    auto it = rt.sent.find({sender, target});
    if (it == rt.sent.end())
        throw PreconditionError("no scripted message p" + std::to_string(sender.index) + " -> p" +
                                std::to_string(target.index) + " in round " + std::to_string(round));
    it->second = perturbed(it->second, sender, target);

    sim::ScenarioPair out = pair;
    out.script_b = script;
    out.b.strategy = strategy_scripted(script);
    return out;
}

PerturbPoint default_perturbation(const sim::ScenarioPair &pair, int min_round)
{
    if (!pair.script_b)
        throw PreconditionError("pair has no script to perturb");
    for (const RoundTrace &rt : pair.script_b->rounds)
    {
        if (rt.round < min_round)
            continue;
        for (ProcessorId c : rt.controlled)
            for (ProcessorId o : pair.observers)
                if (rt.sent.count({c, o}))
                    return PerturbPoint{rt.round, c, o};
    }
    throw PreconditionError("scenario b never sends a controlled message to an observer");
}

} // namespace mobileba::adv
