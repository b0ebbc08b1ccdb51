#pragma once

#include "mobileba/core.hpp"
#include "mobileba/netgraph.hpp"
#include "mobileba/protocol.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mobileba::relcomm
{

using Rational = boost::rational<long long>;

/// One link traversal of a copy: `from` sends it to `to` during `phase` (1..T).
struct Transmission
{
    ProcessorId from;
    ProcessorId to;
    int phase = 1;

    auto operator<=>(const Transmission &) const = default;
};

struct CopyRoute
{
    int id = 0;        // copy index within the transfer
    int route = 0;     // index into TransferPlan::routes
    int injection = 1; // phase in which the sender emits it
    std::vector<Transmission> hops;
    bool delivered = true; // reaches the receiver by the last phase

    int arrival() const { return hops.back().phase; }
    bool operator==(const CopyRoute &) const = default;
};

struct TransferPlan
{
    ProcessorId sender;
    ProcessorId receiver;
    int rounds = 1; // T
    // Vertex sequences; pseudo-paths u-v-v (sent early, stored by v) and
    // u-u-v (held by u, sent late) appear as such.
    std::vector<std::vector<ProcessorId>> routes;
    std::vector<CopyRoute> copies;

    bool self_storage() const { return sender == receiver; }
    int delivered_count() const
    {
        return static_cast<int>(std::count_if(copies.begin(), copies.end(), [](const CopyRoute &c) { return c.delivered; }));
    }
    bool operator==(const TransferPlan &) const = default;
};

enum class PlanPolicy
{
    Strict,     // refuse pairs lacking the required common neighbours
    BestEffort, // use whatever common neighbours exist (proof scenarios only)
};

TransferPlan two_round_plan(const net::Network &g, ProcessorId u, ProcessorId v, int m,
                            PlanPolicy policy = PlanPolicy::Strict);

int compute_T(int n, int m, int kappa);

/// Flooding transfer along kappa canonical disjoint paths for T >= 3.
TransferPlan flood_plan(const net::Network &g, ProcessorId u, ProcessorId v, int m, int kappa);

enum class SchemeKind
{
    TwoRound,
    Flood,
};

struct HopRef
{
    ProcessorId origin;
    ProcessorId target;
    int copy;
    int hop;
};

/// A (T,K) communication scheme: plans for every ordered pair plus lookup tables.
class CommScheme
{
public:
    static CommScheme two_round(const net::Network &g, int m, PlanPolicy policy = PlanPolicy::Strict);
    /// T from compute_T; T == 2 falls back to the two-round plans.
    static CommScheme flood(const net::Network &g, int m, int kappa);

    SchemeKind kind() const { return kind_; }
    int rounds() const { return rounds_; }
    int window() const { return window_; }
    int m() const { return m_; }
    const net::Network &network() const { return network_; }

    const TransferPlan &plan(ProcessorId u, ProcessorId v) const;
    std::span<const HopRef> sends_from(ProcessorId w, int phase) const;
    /// Index of the hop `from -> to` at `phase` in the tagged copy, if the plan has one.
    std::optional<int> hop_index(const RelaySlot &slot, ProcessorId from, ProcessorId to, int phase) const;

private:
    CommScheme(net::Network g, SchemeKind kind, int T, int K, int m);
    void index();

    net::Network network_;
    SchemeKind kind_;
    int rounds_;
    int window_;
    int m_;
    std::vector<TransferPlan> plans_; // n*n, row-major by sender
    std::vector<std::vector<HopRef>> sends_; // (w, phase) -> hops
};

struct DecodeResult
{
    Value value;
    bool strict_majority = true;
};

/// Strict-majority vote; without one, the canonically smallest most frequent value (flagged).
template <typename T>
std::pair<T, bool> majority_vote(std::span<const T> copies)
{
    if (copies.empty())
        throw PreconditionError("majority_decode needs at least one copy");
    std::map<T, int> counts;
    for (const T &c : copies)
        ++counts[c];
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
        if (it->second > best->second)
            best = it;
    bool strict = 2 * best->second > static_cast<int>(copies.size());
    return {best->first, strict};
}

DecodeResult majority_decode(std::span<const Value> copies);

struct KappaBounds
{
    Rational threshold10m; // 10m - 24m^2/n - 6m/n
    Rational thresholdA;   // (A/2 + 2)m for 6 < A <= 12, (10 - 24/A)m for A >= 12
    Rational ratio;        // A = n/m
    bool low_regime;       // A <= 12
};

KappaBounds kappa_sufficiency_bounds(int n, int m);

/// Complete-network protocol executed over a (T,K) scheme with thresholds in units of mK.
struct LiftedProtocol
{
    std::shared_ptr<const CommScheme> scheme;
    mba::ProtocolParams params;
    int logical_rounds;
    int physical_rounds;
};

LiftedProtocol lift(std::shared_ptr<const CommScheme> scheme, const mba::ProtocolParams &params);
/// Same, but without the K < n/(6m) check (proof scenarios).
LiftedProtocol lift_unchecked(std::shared_ptr<const CommScheme> scheme, const mba::ProtocolParams &params);

// Honest relay behaviour, shared by the agreement engine and the transfer harness.

/// Bundles `self` sends during `phase`; `own` is the message it originates (none if it originates nothing).
std::map<ProcessorId, RelayBundle> relay_emit(const CommScheme &scheme, ProcessorId self, int phase,
                                              const std::optional<PairMessage> &own, const RelayBuffers &buffers);

/// Files copies received from `from` during `phase`. Copies whose tag does not
/// match a scheduled hop into `self` are dropped; the first copy per slot wins.
void relay_receive(const CommScheme &scheme, ProcessorId self, int phase, ProcessorId from, const RelayBundle &bundle,
                   RelayBuffers &buffers);

/// Receiver-side decode of the transfer u -> self from the buffered copies.
std::optional<std::pair<PairMessage, bool>> relay_decode(const CommScheme &scheme, ProcessorId u, ProcessorId self,
                                                         const RelayBuffers &buffers);

struct DeliveredCopy
{
    int copy;
    int route;
    int arrival;
    Value value;
    bool influenced; // some holder/sender on its way was controlled at the time
};

struct TransferOutcome
{
    std::vector<DeliveredCopy> copies;
    Value decoded;
    bool strict_majority = true;
    int influenced = 0;
    int injected = 0; // copies the sender put on paths
};

using TransferSchedule = std::vector<std::vector<ProcessorId>>; // controlled set per phase

/// Runs one isolated transfer u -> v of `message` under a mobile adversary.
/// Controlled processors replace every payload they send or hold by `corrupt(payload)`,
/// and may add forged copies produced by `forge` (tags included).
TransferOutcome simulate_transfer(const CommScheme &scheme, ProcessorId u, ProcessorId v, Value message,
                                  const TransferSchedule &schedule, const std::function<Value(Value)> &corrupt,
                                  const std::function<RelayBundle(ProcessorId, ProcessorId, int)> &forge = {});

/// Whether a transfer respects the scheme's endpoint windows under `schedule`.
bool endpoints_respected(const CommScheme &scheme, ProcessorId u, ProcessorId v, const TransferSchedule &schedule);

} // namespace mobileba::relcomm
