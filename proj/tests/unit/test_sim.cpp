#include "mobileba/sim.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mobileba;

namespace
{

sim::Setup k7(Value v = Value::plain(1))
{
    return sim::bare_setup(mba::ProtocolParams::bare(7, 1), v);
}

sim::Setup lifted_k13()
{
    auto scheme = std::make_shared<const relcomm::CommScheme>(
        relcomm::CommScheme::two_round(net::make_complete_minus_matching(13, 6), 1));
    return sim::lifted_setup(relcomm::lift(scheme, mba::ProtocolParams::bare(13, 1)), Value::plain(1));
}

/// Checks that every processor outside the controlled set behaved honestly.
void expect_honest_replay(const Trace &t, const sim::Setup &setup)
{
    const int n = setup.n();
    std::vector<ProcessorState> before;
    for (int p = 1; p <= n; ++p)
        before.push_back(mba::initial_state(ProcessorId(p), setup.source_value));
    for (const RoundTrace &rt : t.rounds)
    {
        for (int x = 1; x <= n; ++x)
        {
            ProcessorId p(x);
            if (std::binary_search(rt.controlled.begin(), rt.controlled.end(), p))
                continue;
            const Outbox out = sim::honest_outbox(setup, p, before[p.slot()], rt.round);
            for (const auto &[q, payload] : out)
                ASSERT_EQ(rt.sent.at({p, q}), payload) << "round " << rt.round << " p" << x;
            Inbox in;
            for (const auto &[edge, payload] : rt.sent)
                if (edge.second == p)
                    in.emplace_back(edge.first, payload);
            ASSERT_EQ(rt.states_after[p.slot()], sim::honest_transition(setup, p, before[p.slot()], in, rt.round))
                << "round " << rt.round << " p" << x;
        }
        before = rt.states_after;
    }
}

class Greedy : public adv::Strategy
{
public:
    explicit Greedy(std::vector<ProcessorId> set) : set_(std::move(set)) {}
    std::vector<ProcessorId> select_controlled(const adv::AdversaryView &) override { return set_; }

private:
    std::vector<ProcessorId> set_;
};

class Reacher : public adv::Strategy
{
public:
    std::vector<ProcessorId> select_controlled(const adv::AdversaryView &) override { return {ProcessorId(1)}; }
    Outbox forge_messages(ProcessorId, const Outbox &honest, const adv::AdversaryView &) override
    {
        Outbox out = honest;
        out.emplace(ProcessorId(2), RelayBundle{});
        return out;
    }
};

class WrongType : public adv::Strategy
{
public:
    std::vector<ProcessorId> select_controlled(const adv::AdversaryView &) override { return {ProcessorId(1)}; }
    Outbox forge_messages(ProcessorId, const Outbox &honest, const adv::AdversaryView &) override
    {
        Outbox out;
        for (const auto &[q, payload] : honest)
            out.emplace(q, PairMessage{Value::plain(0), Value::plain(0)});
        return out;
    }
};

} // namespace

TEST(Engine, FaultFreeDecidesFromRoundTwo)
{
    const Trace t = sim::run({k7(), adv::strategy_none(), 0});
    ASSERT_EQ(t.rounds.size(), 14u);
    for (const RoundTrace &rt : t.rounds)
    {
        if (rt.round < 2)
            continue;
        for (const ProcessorState &s : rt.states_after)
            EXPECT_EQ(s.decided, Value::plain(1)) << "round " << rt.round;
    }
}

TEST(Engine, ScheduledMessagesAllPresent)
{
    const Trace t = sim::run({k7(), adv::strategy_random(9), 9});
    EXPECT_EQ(t.rounds[0].sent.size(), 7u);
    for (std::size_t r = 1; r < t.rounds.size(); ++r)
        EXPECT_EQ(t.rounds[r].sent.size(), 49u);
}

TEST(Engine, Deterministic)
{
    sim::Scenario sc{k7(), adv::strategy_random(3), 3};
    EXPECT_EQ(serialize(sim::run(sc)), serialize(sim::run(sc)));
}

TEST(Engine, HonestReplayBare)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const sim::Setup setup = k7(Value::plain(static_cast<int>(seed % 2)));
        expect_honest_replay(sim::run({setup, adv::strategy_random(seed), seed}), setup);
    }
}

TEST(Engine, HonestReplayLifted)
{
    const sim::Setup setup = lifted_k13();
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        expect_honest_replay(sim::run({setup, adv::strategy_random(seed), seed}), setup);
}

TEST(Engine, RejectsTooManyControlled)
{
    sim::Engine e(k7(), std::make_unique<Greedy>(std::vector<ProcessorId>{ProcessorId(2), ProcessorId(3)}));
    EXPECT_THROW(e.step(), sim::StrategyViolation);
}

TEST(Engine, RejectsNonNeighbourRecipient)
{
    sim::Setup setup = lifted_k13();
    sim::Engine e(setup, std::make_unique<Reacher>());
    EXPECT_THROW(e.step(), sim::StrategyViolation);
}

TEST(Engine, WrongPayloadTypeBecomesSilence)
{
    sim::Engine e(k7(), std::make_unique<WrongType>());
    e.step();
    for (int q = 1; q <= 7; ++q)
        EXPECT_EQ(std::get<Value>(e.trace().rounds[0].sent.at({kSource, ProcessorId(q)})), Value::bot0());
}

TEST(Engine, RejectsBareOnIncompleteNetwork)
{
    sim::Setup setup = k7();
    setup.network = net::make_cycle(7);
    EXPECT_THROW(sim::run({setup, adv::strategy_none(), 0}), PreconditionError);
}

TEST(Engine, StagesOutOfOrder)
{
    sim::Engine e(k7(), adv::strategy_none()(k7()));
    EXPECT_THROW(e.deliver(), std::logic_error);
    e.select();
    EXPECT_THROW(e.select(), std::logic_error);
}

TEST(Verdict, FaultFree)
{
    const sim::Setup setup = k7();
    const sim::Verdict v = sim::check_agreement(sim::run({setup, adv::strategy_none(), 0}), setup);
    EXPECT_EQ(v.mba1prime, sim::Status::Pass);
    EXPECT_EQ(v.mba2, sim::Status::Pass);
    EXPECT_EQ(v.agreed_value, Value::plain(1));
    EXPECT_EQ(v.first_stable_round, 2);
    EXPECT_TRUE(v.ok());
}

TEST(Verdict, EveryoneControlledIsVacuous)
{
    const sim::Setup setup = k7();
    std::vector<std::vector<ProcessorId>> sets;
    for (int r = 1; r <= 14; ++r)
        sets.push_back({ProcessorId((r - 1) % 7 + 1)});
    const Trace t = sim::run({setup, adv::strategy_scheduled(sets, adv::LieRule::constant(Value::plain(0))), 0});
    const sim::Verdict v = sim::check_agreement(t, setup);
    EXPECT_EQ(v.mba1prime, sim::Status::Vacuous);
    EXPECT_EQ(v.mba2, sim::Status::Vacuous);
}

TEST(Verdict, DetectsDisagreement)
{
    const sim::Setup setup = k7();
    Trace t = sim::run({setup, adv::strategy_none(), 0});
    t.rounds.back().states_after[3].decided = Value::plain(0);
    const sim::Verdict v = sim::check_agreement(t, setup);
    EXPECT_EQ(v.mba1prime, sim::Status::Fail);
    EXPECT_EQ(v.mba2, sim::Status::Fail);
    EXPECT_FALSE(v.ok());
}

TEST(Verdict, UnsetDecisionFails)
{
    const sim::Setup setup = k7();
    Trace t = sim::run({setup, adv::strategy_none(), 0});
    t.rounds.back().states_after[2].decided.reset();
    EXPECT_EQ(sim::check_agreement(t, setup).mba1prime, sim::Status::Fail);
}

TEST(Verdict, ReliableIndexWindow)
{
    const sim::Setup setup = k7();
    std::vector<std::vector<ProcessorId>> sets(14);
    sets[0] = {kSource};            // p1 faulty in round 1
    sets[1] = {ProcessorId(2)};     // p2 faulty in round 2
    const Trace t = sim::run({setup, adv::strategy_scheduled(sets, adv::LieRule::constant(Value::plain(0))), 0});
    EXPECT_FALSE(sim::reliable_index(t, setup, 1));
    EXPECT_FALSE(sim::reliable_index(t, setup, 2));
    EXPECT_TRUE(sim::reliable_index(t, setup, 3));
    EXPECT_EQ(sim::first_reliable_index(t, setup), 3);
    EXPECT_FALSE(sim::nonfaulty_in_round(t, setup, ProcessorId(2), 2));
    EXPECT_TRUE(sim::nonfaulty_in_round(t, setup, ProcessorId(2), 3));
}

TEST(Verdict, RandomCampaignSmall)
{
    const sim::Setup setup = k7();
    for (std::uint64_t seed = 1000; seed < 1200; ++seed)
    {
        const Trace t = sim::run({setup, adv::strategy_random(seed), seed});
        EXPECT_TRUE(sim::check_agreement(t, setup).ok()) << seed;
        EXPECT_TRUE(sim::check_claim(t, setup).empty()) << seed;
    }
}

TEST(Lifted, PhysicalRoundsAndAgreement)
{
    const sim::Setup setup = lifted_k13();
    EXPECT_EQ(setup.rounds, 52);
    const Trace t = sim::run({setup, adv::strategy_none(), 0});
    EXPECT_EQ(t.rounds.size(), 52u);
    const sim::Verdict v = sim::check_agreement(t, setup);
    EXPECT_EQ(v.mba2, sim::Status::Pass);
    EXPECT_EQ(v.agreed_value, Value::plain(1));
}

TEST(Lifted, FloodSchemeRunsOnTwoClique)
{
    auto scheme = std::make_shared<const relcomm::CommScheme>(
        relcomm::CommScheme::flood(net::make_two_clique_network(8, 9), 1, 9));
    const sim::Setup setup =
        sim::lifted_setup(relcomm::lift(scheme, mba::ProtocolParams::bare(25, 1)), Value::plain(0));
    EXPECT_EQ(setup.rounds, 2 * 25 * 4);
    const Trace t = sim::run({setup, adv::strategy_random(4), 4});
    EXPECT_TRUE(sim::check_agreement(t, setup).ok());
}

TEST(Views, CompareDetectsStateDifference)
{
    const sim::Setup setup = k7();
    const Trace a = sim::run({setup, adv::strategy_none(), 0});
    Trace b = a;
    b.rounds[4].states_after[ProcessorId(6).slot()].b = Value::bot2();
    auto r = sim::compare_views(a, b, {ProcessorId(6)});
    ASSERT_FALSE(r.identical);
    EXPECT_EQ(r.first->round, 5);
    EXPECT_EQ(r.first->field, "state");
    EXPECT_TRUE(sim::compare_views(a, b, {ProcessorId(5)}).identical);
}
