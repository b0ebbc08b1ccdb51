#pragma once

#include "mobileba/netgraph.hpp"
#include "mobileba/sim.hpp"

#include <vector>

namespace mobileba::adv
{

struct FiveSets
{
    std::vector<ProcessorId> S, A, B, C, D;
};

/// Contiguous split of 1..n into S, A, B, C, D (source in S), each of size at most m.
FiveSets five_sets(int n, int m);

/// Scenario a: S always controlled, telling A u B one value and C u D another.
/// Scenario b: honest source with value v_s, A and B controlled alternately.
/// Observers C u D. With `swapped`, scenario b has the other source value, C and D
/// alternate, and the observers are A u B.
sim::ScenarioPair build_five_set_pair(int n, int m, Value v_s, bool swapped = false);

/// Scenario a: source value 0 with A and B (parts of X) alternating.
/// Scenario b: source value 1 with C and D alternating. Observer p.
/// Runs the lifted protocol over the best-effort two-round scheme.
sim::ScenarioPair build_cutset_pair(const net::Network &g, int m, ProcessorId s, std::vector<ProcessorId> x,
                                    ProcessorId p);

/// Changes one scripted message of scenario b (sender -> target in `round`).
sim::ScenarioPair perturb_pair(const sim::ScenarioPair &pair, int round, ProcessorId sender, ProcessorId target);

/// First controlled message of scenario b to an observer, as (round, sender, target).
struct PerturbPoint
{
    int round;
    ProcessorId sender;
    ProcessorId target;
};
PerturbPoint default_perturbation(const sim::ScenarioPair &pair, int min_round = 2);

} // namespace mobileba::adv
