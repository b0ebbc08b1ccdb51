#include "mobileba/protocol.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace mobileba::mba
{

ProtocolParams ProtocolParams::make(int n, int m, int alphabet_size, int fault_unit)
{
    if (n <= 6 * fault_unit)
    {
        throw PreconditionError("agreement needs n > 6*" + std::to_string(fault_unit) + " (n=" + std::to_string(n) +
                                ")");
    }
    return unchecked(n, m, alphabet_size, fault_unit);
}

ProtocolParams ProtocolParams::bare(int n, int m, int alphabet_size)
{
    return make(n, m, alphabet_size, m);
}

ProtocolParams ProtocolParams::unchecked(int n, int m, int alphabet_size, int fault_unit)
{
    if (n < 1)
        throw PreconditionError("need at least one processor");
    if (m < 0 || fault_unit < 0)
        throw PreconditionError("fault bounds are non-negative");
    if (alphabet_size < 1)
        throw PreconditionError("alphabet needs at least one symbol");
    return ProtocolParams(n, m, alphabet_size, fault_unit);
}

ProcessorId special_index(int round)
{
    if (round < 2)
        throw PreconditionError("special processor is defined from round 2, got " + std::to_string(round));
    return ProcessorId(round / 2 + 1);
}

ProcessorState initial_state(ProcessorId self, Value source_value)
{
    ProcessorState s;
    if (self == kSource)
    {
        s.a = source_value;
        s.b = source_value;
    }
    return s;
}

ProcessorState round_one_update(Value received)
{
    ProcessorState s;
    s.a = received;
    s.b = received;
    return s;
}

Value summarize(const std::vector<Value> &set)
{
    if (set.empty())
        return Value::bot0();
    if (set.size() == 1)
        return set.front();
    return Value::bot2();
}

std::vector<Value> decision_qualifiers(std::span<const PairMessage> received, const ProtocolParams &params)
{
    std::map<Value, int> counts;
    for (const PairMessage &m : received)
        ++counts[m.a];
    const int need = params.n() - 2 * params.fault_unit();
    std::vector<Value> out;
    for (const auto &[v, c] : counts)
        if (c >= need)
            out.push_back(v);
    return out;
}

namespace
{

// Support set under one threshold: x (never bot0) belongs iff the special
// processor's a equals x and more than `threshold` b-components lie in {x, bot2},
// or more than `threshold` a-components equal x.
std::vector<Value> support(std::span<const PairMessage> received, const PairMessage *special, int threshold)
{
    std::map<Value, int> a_count;
    int bot2_b = 0;
    std::map<Value, int> b_count;
    for (const PairMessage &m : received)
    {
        ++a_count[m.a];
        ++b_count[m.b];
        if (m.b.is_bot2())
            ++bot2_b;
    }
    std::vector<Value> candidates;
    for (const auto &[v, c] : a_count)
        candidates.push_back(v);
    if (special)
        candidates.push_back(special->a);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<Value> set;
    for (Value x : candidates)
    {
        if (x.is_bot0())
            continue;
        bool by_special = false;
        if (special && special->a == x)
        {
            int matching = x.is_bot2() ? bot2_b : b_count[x] + bot2_b;
            by_special = matching > threshold;
        }
        bool by_a = a_count[x] > threshold;
        if (by_special || by_a)
            set.push_back(x);
    }
    return set;
}

} // namespace

ProcessorState round_update(ProcessorId self, const ProcessorState &state, std::span<const PairMessage> received,
                            int round, const ProtocolParams &params)
{
    if (static_cast<int>(received.size()) != params.n())
    {
        throw PreconditionError("round_update expects " + std::to_string(params.n()) + " messages, got " +
                                std::to_string(received.size()));
    }
    const int mu = params.fault_unit();
    ProcessorState next = state;

    auto qualifiers = decision_qualifiers(received, params);
    if (!qualifiers.empty())
        next.decided = qualifiers.front();

    const ProcessorId special = special_index(round);
    const PairMessage *special_msg = special.index <= params.n() ? &received[special.slot()] : nullptr;
    if (self == special)
    {
        next.A = support(received, special_msg, 3 * mu);
        next.B = next.A;
    }
    else
    {
        next.A = support(received, special_msg, 4 * mu);
        next.B = support(received, special_msg, 2 * mu);
    }
    next.a = summarize(next.A);
    next.b = summarize(next.B);
    return next;
}

PairMessage honest_emit(const ProcessorState &state, int round)
{
    if (round < 2)
        throw PreconditionError("pair messages are sent from round 2 on");
    return PairMessage{state.a, state.b};
}

int termination_round(const ProtocolParams &params)
{
    return 2 * params.n();
}

} // namespace mobileba::mba
