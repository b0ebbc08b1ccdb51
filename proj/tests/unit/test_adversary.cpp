#include "mobileba/adversary.hpp"
#include "mobileba/pairs.hpp"
#include "mobileba/sim.hpp"

#include <gtest/gtest.h>

using namespace mobileba;

namespace
{

sim::Setup k7(Value v = Value::plain(1))
{
    return sim::bare_setup(mba::ProtocolParams::bare(7, 1), v);
}

sim::Setup five(Value v = Value::plain(1))
{
    return sim::bare_setup(mba::ProtocolParams::unchecked(5, 1, 2, 1), v);
}

std::vector<ProcessorId> ids(std::initializer_list<int> xs)
{
    std::vector<ProcessorId> out;
    for (int x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST(StrategyNone, NeverControls)
{
    const Trace t = sim::run({k7(), adv::strategy_none(), 0});
    for (const RoundTrace &rt : t.rounds)
        EXPECT_TRUE(rt.controlled.empty());
}

TEST(StrategyStatic, SplitSourceBehaviour)
{
    const sim::Setup setup = five();
    const Trace t = sim::run({setup, adv::strategy_static({kSource}, adv::LieRule::split(Value::plain(0), Value::plain(1))), 0});
    const auto &r1 = t.rounds.front().sent;
    for (int q = 1; q <= 3; ++q)
        EXPECT_EQ(std::get<Value>(r1.at({kSource, ProcessorId(q)})), Value::plain(0)) << q;
    for (int q = 4; q <= 5; ++q)
        EXPECT_EQ(std::get<Value>(r1.at({kSource, ProcessorId(q)})), Value::plain(1)) << q;
}

TEST(StrategyStatic, EmptySetEqualsNone)
{
    const sim::Setup setup = k7();
    EXPECT_EQ(serialize(sim::run({setup, adv::strategy_static({}, adv::LieRule::constant(Value::plain(0))), 0})),
              serialize(sim::run({setup, adv::strategy_none(), 0})));
}

TEST(StrategyStatic, ConstantLieStillAgrees)
{
    const sim::Setup setup = k7();
    const Trace t = sim::run({setup, adv::strategy_static({ProcessorId(4)}, adv::LieRule::constant(Value::plain(0))), 0});
    const sim::Verdict v = sim::check_agreement(t, setup);
    EXPECT_EQ(v.mba1prime, sim::Status::Pass);
    EXPECT_EQ(v.mba2, sim::Status::Pass);
    EXPECT_EQ(v.agreed_value, Value::plain(1));
}

TEST(StrategyStatic, RejectsOversizedSet)
{
    EXPECT_THROW(adv::strategy_static(ids({2, 3}), adv::LieRule::constant(Value::plain(0)))(k7()), PreconditionError);
}

TEST(StrategyAlternating, FakeConsistentTraffic)
{
    const sim::Setup setup = five(Value::plain(1));
    const Trace t = sim::run({setup, adv::strategy_alternating(ids({2}), ids({3}), Value::plain(0)), 0});
    int checked = 0;
    for (const RoundTrace &rt : t.rounds)
    {
        EXPECT_EQ(rt.controlled, rt.round % 2 == 1 ? ids({2}) : ids({3}));
        if (rt.round == 1)
            continue;
        for (int from : {2, 3})
            for (int to : {4, 5})
            {
                const auto &msg = std::get<PairMessage>(rt.sent.at({ProcessorId(from), ProcessorId(to)}));
                EXPECT_EQ(msg.a, Value::plain(0)) << "round " << rt.round;
                EXPECT_EQ(msg.b, Value::plain(0)) << "round " << rt.round;
                ++checked;
            }
    }
    EXPECT_EQ(checked, 4 * 9);
}

TEST(StrategyAlternating, SameSetsIsStaticControl)
{
    const Trace t = sim::run({k7(), adv::strategy_alternating(ids({5}), ids({5}), Value::plain(0)), 0});
    for (const RoundTrace &rt : t.rounds)
        EXPECT_EQ(rt.controlled, ids({5}));
}

TEST(StrategyRandom, RespectsBoundAndIsSeeded)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const Trace a = sim::run({k7(), adv::strategy_random(seed), seed});
        const Trace b = sim::run({k7(), adv::strategy_random(seed), seed});
        EXPECT_EQ(a, b);
        for (const RoundTrace &rt : a.rounds)
            EXPECT_LE(rt.controlled.size(), 1u);
    }
    EXPECT_NE(sim::run({k7(), adv::strategy_random(1), 1}), sim::run({k7(), adv::strategy_random(2), 2}));
}

TEST(StrategyScripted, ReplaysRecordedTrace)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const Trace original = sim::run({k7(), adv::strategy_random(seed), seed});
        auto script = std::make_shared<const Trace>(original);
        EXPECT_EQ(sim::run({k7(), adv::strategy_scripted(script), 0}), original) << seed;
    }
}

TEST(MapValues, ReachesRelayedCopies)
{
    RelayBundle b{RelayCopy{ProcessorId(1), ProcessorId(2), 0, PairMessage{Value::plain(1), Value::bot2()}}};
    Payload out = adv::map_values(b, [](Value) { return Value::plain(0); });
    const auto &copy = std::get<RelayBundle>(out).front();
    EXPECT_EQ(copy.payload, (PairMessage{Value::plain(0), Value::plain(0)}));
    EXPECT_EQ(copy.origin, ProcessorId(1));
}

TEST(Counterfactual, MatchesFaultFreeRun)
{
    const sim::Setup setup = k7(Value::plain(1));
    sim::Setup fake = setup;
    fake.source_value = Value::plain(0);
    const Trace reference = sim::run({fake, adv::strategy_none(), 0});
    adv::CounterfactualRun cf(setup, Value::plain(0));
    for (int r = 1; r <= setup.rounds; ++r)
        for (int p = 1; p <= 7; ++p)
            EXPECT_EQ(cf.state_after(ProcessorId(p), r), reference.rounds[static_cast<std::size_t>(r - 1)].states_after[ProcessorId(p).slot()]);
}

TEST(FiveSets, Partition)
{
    adv::FiveSets s = adv::five_sets(5, 1);
    EXPECT_EQ(s.S, ids({1}));
    EXPECT_EQ(s.A, ids({2}));
    EXPECT_EQ(s.B, ids({3}));
    EXPECT_EQ(s.C, ids({4}));
    EXPECT_EQ(s.D, ids({5}));
    adv::FiveSets t = adv::five_sets(9, 2);
    EXPECT_EQ(t.S.size() + t.A.size() + t.B.size() + t.C.size() + t.D.size(), 9u);
    EXPECT_THROW(adv::five_sets(6, 1), PreconditionError);
}

TEST(FiveSetPair, ObserversSeeIdenticalViews)
{
    for (bool swapped : {false, true})
    {
        sim::ScenarioPair pair = adv::build_five_set_pair(5, 1, Value::plain(1), swapped);
        EXPECT_EQ(pair.observers, swapped ? ids({2, 3}) : ids({4, 5}));
        const Trace a = sim::run(pair.a);
        const Trace b = sim::run(pair.b);
        EXPECT_EQ(a.rounds.size(), 10u);
        for (ProcessorId o : pair.observers)
            EXPECT_EQ(serialize(view_of(a, o)), serialize(view_of(b, o)));
        EXPECT_TRUE(sim::check_indistinguishable(pair).identical);
    }
}

TEST(FiveSetPair, ScenarioASourceSplits)
{
    sim::ScenarioPair pair = adv::build_five_set_pair(5, 1, Value::plain(1));
    const Trace a = sim::run(pair.a);
    const auto &r1 = a.rounds.front().sent;
    EXPECT_EQ(std::get<Value>(r1.at({kSource, ProcessorId(2)})), Value::plain(0));
    EXPECT_EQ(std::get<Value>(r1.at({kSource, ProcessorId(3)})), Value::plain(0));
    EXPECT_EQ(std::get<Value>(r1.at({kSource, ProcessorId(4)})), Value::plain(1));
    EXPECT_EQ(std::get<Value>(r1.at({kSource, ProcessorId(5)})), Value::plain(1));
}

TEST(FiveSetPair, ObserversDecideAlikeInBothScenarios)
{
    for (bool swapped : {false, true})
    {
        sim::ScenarioPair pair = adv::build_five_set_pair(5, 1, Value::plain(1), swapped);
        const Trace a = sim::run(pair.a);
        const Trace b = sim::run(pair.b);
        for (ProcessorId o : pair.observers)
            EXPECT_EQ(a.rounds.back().states_after[o.slot()].decided, b.rounds.back().states_after[o.slot()].decided);
    }
}

TEST(FiveSetPair, Preconditions)
{
    EXPECT_THROW(adv::build_five_set_pair(6, 1, Value::plain(1)), PreconditionError);
    EXPECT_THROW(adv::build_five_set_pair(2, 1, Value::plain(1)), PreconditionError);
    EXPECT_NO_THROW(adv::build_five_set_pair(10, 2, Value::plain(0)));
}

TEST(CutsetPair, FarObserverIdentical)
{
    net::Network g = net::make_two_clique_network(4, 4);
    sim::ScenarioPair pair = adv::build_cutset_pair(g, 1, kSource, ids({9, 10, 11, 12}), ProcessorId(5));
    EXPECT_TRUE(sim::check_indistinguishable(pair).identical);
}

TEST(CutsetPair, Preconditions)
{
    net::Network g = net::make_two_clique_network(4, 4);
    EXPECT_THROW(adv::build_cutset_pair(g, 1, kSource, ids({9, 10, 11}), ProcessorId(5)), PreconditionError);
    EXPECT_THROW(adv::build_cutset_pair(g, 1, kSource, ids({8, 9, 10, 11, 12}), ProcessorId(5)), PreconditionError);
    EXPECT_THROW(adv::build_cutset_pair(g, 1, kSource, ids({9, 10, 11, 12}), ProcessorId(10)), PreconditionError);
}

TEST(Perturbation, BreaksIndistinguishabilityAtThatRound)
{
    sim::ScenarioPair pair = adv::build_five_set_pair(5, 1, Value::plain(1));
    adv::PerturbPoint pt = adv::default_perturbation(pair);
    sim::ScenarioPair bad = adv::perturb_pair(pair, pt.round, pt.sender, pt.target);
    sim::Indistinguishability r = sim::check_indistinguishable(bad);
    ASSERT_FALSE(r.identical);
    EXPECT_EQ(r.first->round, pt.round);
    EXPECT_EQ(r.first->observer, pt.target);
    EXPECT_EQ(r.first->field, "received");
    EXPECT_THROW(adv::perturb_pair(pair, 2, ProcessorId(5), ProcessorId(4)), PreconditionError);
}
