#include "mobileba/relcomm.hpp"

#include <set>
#include <string>

namespace mobileba::relcomm
{

namespace
{

std::string pair_name(ProcessorId u, ProcessorId v)
{
    return "(" + std::to_string(u.index) + "," + std::to_string(v.index) + ")";
}

CopyRoute single_copy(int id, ProcessorId from, ProcessorId to, int phase)
{
    return CopyRoute{id, id, phase, {Transmission{from, to, phase}}, true};
}

} // namespace

TransferPlan two_round_plan(const net::Network &g, ProcessorId u, ProcessorId v, int m, PlanPolicy policy)
{
    if (!g.contains(u) || !g.contains(v))
        throw PreconditionError("transfer endpoint out of range");
    TransferPlan plan{u, v, 2, {}, {}};
    if (u == v)
        return plan;

    const bool adjacent = g.adjacent(u, v);
    const int need = adjacent ? std::max(4 * m - 1, 0) : 4 * m + 1;
    auto common = net::common_neighbors(g, u, v);
    if (static_cast<int>(common.size()) < need)
    {
        if (policy == PlanPolicy::Strict)
        {
            throw PreconditionError("pair " + pair_name(u, v) + " has " + std::to_string(common.size()) +
                                    " common neighbours, needs " + std::to_string(need));
        }
    }
    common.resize(std::min<std::size_t>(common.size(), static_cast<std::size_t>(need)));

    int id = 0;
    for (ProcessorId w : common)
    {
        plan.routes.push_back({u, w, v});
        plan.copies.push_back(CopyRoute{id, id, 1, {Transmission{u, w, 1}, Transmission{w, v, 2}}, true});
        ++id;
    }
    if (adjacent)
    {
        // u-v-v: sent in phase 1 and stored by v; u-u-v: kept by u and sent in phase 2
        plan.routes.push_back({u, v, v});
        plan.copies.push_back(single_copy(id++, u, v, 1));
        plan.routes.push_back({u, u, v});
        plan.copies.push_back(single_copy(id++, u, v, 2));
    }
    return plan;
}

int compute_T(int n, int m, int kappa)
{
    if (kappa <= 4 * m)
    {
        throw PreconditionError("flooding needs kappa > 4m (kappa=" + std::to_string(kappa) +
                                ", 4m=" + std::to_string(4 * m) + ")");
    }
    const int num = n - 1 - 4 * m;
    const int den = kappa - 4 * m;
    return num >= 0 ? (num + den - 1) / den : num / den;
}

TransferPlan flood_plan(const net::Network &g, ProcessorId u, ProcessorId v, int m, int kappa)
{
    const int T = compute_T(g.size(), m, kappa);
    if (T <= 1)
        throw PreconditionError("T=" + std::to_string(T) + ": the network is complete, no relaying needed");
    if (T == 2)
        return two_round_plan(g, u, v, m);
    if (!g.contains(u) || !g.contains(v))
        throw PreconditionError("transfer endpoint out of range");

    TransferPlan plan{u, v, T, {}, {}};
    if (u == v)
        return plan;
    if (g.adjacent(u, v))
    {
        // both endpoints are honest in phase 2, the link is exact
        plan.routes.push_back({u, v});
        plan.copies.push_back(single_copy(0, u, v, 2));
        return plan;
    }

    auto system = net::disjoint_paths(g, u, v, kappa);
    int id = 0;
    for (std::size_t r = 0; r < system.paths.size(); ++r)
    {
        const auto &path = system.paths[r];
        plan.routes.push_back(path);
        const int length = static_cast<int>(path.size()) - 1;
        for (int inject = 1; inject <= T - 1; ++inject)
        {
            CopyRoute copy{id++, static_cast<int>(r), inject, {}, inject + length - 1 <= T};
            for (int k = 0; k < length && inject + k <= T; ++k)
                copy.hops.push_back(Transmission{path[static_cast<std::size_t>(k)], path[static_cast<std::size_t>(k + 1)], inject + k});
            plan.copies.push_back(std::move(copy));
        }
    }
    return plan;
}

CommScheme::CommScheme(net::Network g, SchemeKind kind, int T, int K, int m)
    : network_(std::move(g)), kind_(kind), rounds_(T), window_(K), m_(m)
{
}

CommScheme CommScheme::two_round(const net::Network &g, int m, PlanPolicy policy)
{
    CommScheme scheme(g, SchemeKind::TwoRound, 2, 1, m);
    const int n = g.size();
    scheme.plans_.reserve(static_cast<std::size_t>(n * n));
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            scheme.plans_.push_back(two_round_plan(g, ProcessorId(u), ProcessorId(v), m, policy));
    scheme.index();
    return scheme;
}

CommScheme CommScheme::flood(const net::Network &g, int m, int kappa)
{
    const int T = compute_T(g.size(), m, kappa);
    if (T <= 1)
        throw PreconditionError("T=" + std::to_string(T) + ": the network is complete, no relaying needed");
    if (T == 2)
        return two_round(g, m);
    if (net::vertex_connectivity(g) < kappa)
        throw PreconditionError("network connectivity is below kappa=" + std::to_string(kappa));
    CommScheme scheme(g, SchemeKind::Flood, T, T - 1, m);
    const int n = g.size();
    scheme.plans_.reserve(static_cast<std::size_t>(n * n));
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            scheme.plans_.push_back(flood_plan(g, ProcessorId(u), ProcessorId(v), m, kappa));
    scheme.index();
    return scheme;
}

void CommScheme::index()
{
    const int n = network_.size();
    sends_.assign(static_cast<std::size_t>(n * rounds_), {});
    for (const TransferPlan &plan : plans_)
    {
        for (const CopyRoute &copy : plan.copies)
        {
            for (std::size_t h = 0; h < copy.hops.size(); ++h)
            {
                const Transmission &t = copy.hops[h];
                sends_[t.from.slot() * static_cast<std::size_t>(rounds_) + static_cast<std::size_t>(t.phase - 1)]
                    .push_back(HopRef{plan.sender, plan.receiver, copy.id, static_cast<int>(h)});
            }
        }
    }
}

const TransferPlan &CommScheme::plan(ProcessorId u, ProcessorId v) const
{
    if (!network_.contains(u) || !network_.contains(v))
        throw PreconditionError("no plan for " + pair_name(u, v));
    return plans_[u.slot() * static_cast<std::size_t>(network_.size()) + v.slot()];
}

std::span<const HopRef> CommScheme::sends_from(ProcessorId w, int phase) const
{
    if (!network_.contains(w) || phase < 1 || phase > rounds_)
        return {};
    return sends_[w.slot() * static_cast<std::size_t>(rounds_) + static_cast<std::size_t>(phase - 1)];
}

std::optional<int> CommScheme::hop_index(const RelaySlot &slot, ProcessorId from, ProcessorId to, int phase) const
{
    if (!network_.contains(slot.origin) || !network_.contains(slot.target))
        return std::nullopt;
    const TransferPlan &p = plan(slot.origin, slot.target);
    if (slot.copy < 0 || slot.copy >= static_cast<int>(p.copies.size()))
        return std::nullopt;
    const auto &hops = p.copies[static_cast<std::size_t>(slot.copy)].hops;
    for (std::size_t h = 0; h < hops.size(); ++h)
        if (hops[h] == Transmission{from, to, phase})
            return static_cast<int>(h);
    return std::nullopt;
}

DecodeResult majority_decode(std::span<const Value> copies)
{
    auto [value, strict] = majority_vote(copies);
    return DecodeResult{value, strict};
}

KappaBounds kappa_sufficiency_bounds(int n, int m)
{
    if (m < 1 || n <= 6 * m)
        throw PreconditionError("kappa bounds need m >= 1 and n > 6m");
    const long long N = n;
    const long long M = m;
    KappaBounds out;
    out.threshold10m = Rational(10 * M) - Rational(24 * M * M, N) - Rational(6 * M, N);
    out.ratio = Rational(N, M);
    out.low_regime = out.ratio <= Rational(12);
    if (out.low_regime)
        out.thresholdA = (out.ratio / 2 + 2) * M;
    else
        out.thresholdA = (Rational(10) - Rational(24) / out.ratio) * M;
    return out;
}

LiftedProtocol lift_unchecked(std::shared_ptr<const CommScheme> scheme, const mba::ProtocolParams &params)
{
    if (!scheme)
        throw PreconditionError("lift needs a scheme");
    if (scheme->network().size() != params.n())
        throw PreconditionError("scheme and protocol disagree on n");
    const int K = scheme->window();
    const int T = scheme->rounds();
    auto lifted = mba::ProtocolParams::unchecked(params.n(), params.m(), params.alphabet_size(), params.m() * K);
    return LiftedProtocol{std::move(scheme), lifted, 2 * params.n(), 2 * params.n() * T};
}

LiftedProtocol lift(std::shared_ptr<const CommScheme> scheme, const mba::ProtocolParams &params)
{
    if (!scheme)
        throw PreconditionError("lift needs a scheme");
    const int K = scheme->window();
    if (6 * params.m() * K >= params.n())
    {
        throw PreconditionError("lifting needs K < n/(6m): K=" + std::to_string(K) + ", n/(6m)=" +
                                std::to_string(params.n()) + "/" + std::to_string(6 * params.m()));
    }
    return lift_unchecked(std::move(scheme), params);
}

std::map<ProcessorId, RelayBundle> relay_emit(const CommScheme &scheme, ProcessorId self, int phase,
                                              const std::optional<PairMessage> &own, const RelayBuffers &buffers)
{
    std::map<ProcessorId, RelayBundle> out;
    for (const HopRef &ref : scheme.sends_from(self, phase))
    {
        const RelaySlot slot{ref.origin, ref.target, ref.copy};
        const Transmission &t =
            scheme.plan(ref.origin, ref.target).copies[static_cast<std::size_t>(ref.copy)].hops[static_cast<std::size_t>(ref.hop)];
        std::optional<PairMessage> payload;
        if (ref.hop == 0)
        {
            payload = own;
        }
        else if (auto it = buffers.held.find(slot); it != buffers.held.end())
        {
            payload = it->second;
        }
        if (payload)
            out[t.to].push_back(RelayCopy{ref.origin, ref.target, ref.copy, *payload});
    }
    return out;
}

void relay_receive(const CommScheme &scheme, ProcessorId self, int phase, ProcessorId from, const RelayBundle &bundle,
                   RelayBuffers &buffers)
{
    std::set<RelaySlot> filled;
    for (const RelayCopy &c : bundle)
    {
        const RelaySlot slot{c.origin, c.target, c.copy};
        if (filled.count(slot))
            continue;
        auto hop = scheme.hop_index(slot, from, self, phase);
        if (!hop)
            continue;
        filled.insert(slot);
        const auto &copy = scheme.plan(c.origin, c.target).copies[static_cast<std::size_t>(c.copy)];
        if (*hop + 1 == static_cast<int>(copy.hops.size()))
        {
            if (copy.delivered && c.target == self)
                buffers.inbox[slot] = c.payload;
        }
        else
        {
            buffers.held[slot] = c.payload;
        }
    }
}

std::optional<std::pair<PairMessage, bool>> relay_decode(const CommScheme &scheme, ProcessorId u, ProcessorId self,
                                                         const RelayBuffers &buffers)
{
    const TransferPlan &plan = scheme.plan(u, self);
    std::vector<PairMessage> copies;
    for (const CopyRoute &c : plan.copies)
    {
        if (!c.delivered)
            continue;
        if (auto it = buffers.inbox.find(RelaySlot{u, self, c.id}); it != buffers.inbox.end())
            copies.push_back(it->second);
    }
    if (copies.empty())
        return std::nullopt;
    return majority_vote<PairMessage>(copies);
}

namespace
{

bool in_set(const TransferSchedule &schedule, ProcessorId p, int phase)
{
    if (phase < 1 || phase > static_cast<int>(schedule.size()))
        return false;
    const auto &c = schedule[static_cast<std::size_t>(phase - 1)];
    return std::find(c.begin(), c.end(), p) != c.end();
}

bool influenced(const CopyRoute &copy, int T, const TransferSchedule &schedule)
{
    for (std::size_t h = 0; h < copy.hops.size(); ++h)
    {
        const Transmission &t = copy.hops[h];
        if (in_set(schedule, t.from, t.phase))
            return true;
        const int release = h + 1 < copy.hops.size() ? copy.hops[h + 1].phase : T;
        for (int phase = t.phase; phase <= release; ++phase)
            if (in_set(schedule, t.to, phase))
                return true;
    }
    return false;
}

} // namespace

TransferOutcome simulate_transfer(const CommScheme &scheme, ProcessorId u, ProcessorId v, Value message,
                                  const TransferSchedule &schedule, const std::function<Value(Value)> &corrupt,
                                  const std::function<RelayBundle(ProcessorId, ProcessorId, int)> &forge)
{
    const net::Network &g = scheme.network();
    const int n = g.size();
    const int T = scheme.rounds();
    const TransferPlan &plan = scheme.plan(u, v);
    TransferOutcome outcome;
    outcome.injected = static_cast<int>(plan.copies.size());

    if (u == v)
    {
        outcome.decoded = message;
        outcome.copies.push_back(DeliveredCopy{0, 0, T, message, false});
        return outcome;
    }

    const PairMessage own{message, message};
    auto corrupt_pair = [&](PairMessage p) { return PairMessage{corrupt(p.a), corrupt(p.b)}; };
    std::vector<RelayBuffers> buffers(static_cast<std::size_t>(n));

    for (int phase = 1; phase <= T; ++phase)
    {
        std::vector<std::map<ProcessorId, RelayBundle>> sent(static_cast<std::size_t>(n));
        for (int x = 1; x <= n; ++x)
        {
            ProcessorId w(x);
            auto bundles = relay_emit(scheme, w, phase, w == u ? std::optional(own) : std::nullopt, buffers[w.slot()]);
            if (in_set(schedule, w, phase))
            {
                for (auto &[to, bundle] : bundles)
                    for (RelayCopy &c : bundle)
                        c.payload = corrupt_pair(c.payload);
                if (forge)
                {
                    for (ProcessorId y : g.neighbors(w))
                    {
                        auto extra = forge(w, y, phase);
                        bundles[y].insert(bundles[y].end(), extra.begin(), extra.end());
                    }
                }
            }
            sent[w.slot()] = std::move(bundles);
        }
        for (int x = 1; x <= n; ++x)
        {
            for (const auto &[to, bundle] : sent[static_cast<std::size_t>(x - 1)])
            {
                if (!g.adjacent(ProcessorId(x), to))
                    continue;
                relay_receive(scheme, to, phase, ProcessorId(x), bundle, buffers[to.slot()]);
            }
        }
        for (int x = 1; x <= n; ++x)
        {
            ProcessorId w(x);
            if (!in_set(schedule, w, phase))
                continue;
            for (auto &[slot, msg] : buffers[w.slot()].held)
                msg = corrupt_pair(msg);
            for (auto &[slot, msg] : buffers[w.slot()].inbox)
                msg = corrupt_pair(msg);
        }
    }

    std::vector<Value> values;
    const RelayBuffers &mine = buffers[v.slot()];
    for (const CopyRoute &c : plan.copies)
    {
        if (!c.delivered)
            continue;
        auto it = mine.inbox.find(RelaySlot{u, v, c.id});
        if (it == mine.inbox.end())
            continue;
        bool hit = influenced(c, T, schedule);
        outcome.copies.push_back(DeliveredCopy{c.id, c.route, c.arrival(), it->second.a, hit});
        outcome.influenced += hit ? 1 : 0;
        values.push_back(it->second.a);
    }
    if (values.empty())
    {
        outcome.decoded = Value::bot0();
        outcome.strict_majority = false;
        return outcome;
    }
    auto result = majority_decode(values);
    outcome.decoded = result.value;
    outcome.strict_majority = result.strict_majority;
    return outcome;
}

bool endpoints_respected(const CommScheme &scheme, ProcessorId u, ProcessorId v, const TransferSchedule &schedule)
{
    const int T = scheme.rounds();
    const int K = scheme.window();
    for (int phase = 1; phase <= K; ++phase)
        if (in_set(schedule, u, phase))
            return false;
    for (int phase = T - K + 1; phase <= T; ++phase)
        if (in_set(schedule, v, phase))
            return false;
    return true;
}

} // namespace mobileba::relcomm
