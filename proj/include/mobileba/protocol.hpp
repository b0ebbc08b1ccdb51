#pragma once

#include "mobileba/core.hpp"

#include <span>
#include <vector>

namespace mobileba::mba
{

/// Parameters of the complete-network agreement protocol.
///
/// `fault_unit` is the quantity every threshold is expressed in: m for the
/// bare protocol, mK when the protocol runs on top of a (T,K) scheme.
class ProtocolParams
{
public:
    /// Checked construction: requires n > 6 * fault_unit.
    static ProtocolParams make(int n, int m, int alphabet_size, int fault_unit);
    static ProtocolParams bare(int n, int m, int alphabet_size = 2);
    /// For impossibility constructions that deliberately run below the bound.
    static ProtocolParams unchecked(int n, int m, int alphabet_size, int fault_unit);

    int n() const { return n_; }
    int m() const { return m_; }
    int alphabet_size() const { return alphabet_; }
    int fault_unit() const { return fault_unit_; }
    bool sufficient() const { return n_ > 6 * fault_unit_; }

    bool operator==(const ProtocolParams &) const = default;

private:
    ProtocolParams(int n, int m, int alphabet, int fault_unit)
        : n_(n), m_(m), alphabet_(alphabet), fault_unit_(fault_unit)
    {
    }

    int n_;
    int m_;
    int alphabet_;
    int fault_unit_;
};

/// The special processor of round r: floor(r/2) + 1. May exceed n in the last round.
ProcessorId special_index(int round);

ProcessorState initial_state(ProcessorId self, Value source_value);
ProcessorState round_one_update(Value received);

/// Honest state transition for round r >= 2. `received` holds one message per
/// sender, indexed by ProcessorId::slot(), including the processor's own.
ProcessorState round_update(ProcessorId self, const ProcessorState &state, std::span<const PairMessage> received,
                            int round, const ProtocolParams &params);

PairMessage honest_emit(const ProcessorState &state, int round);

int termination_round(const ProtocolParams &params);

/// Values held by at least n - 2*fault_unit of the received a-components.
std::vector<Value> decision_qualifiers(std::span<const PairMessage> received, const ProtocolParams &params);

/// a/b encoding of a support set: its sole element, bot0 when empty, bot2 otherwise.
Value summarize(const std::vector<Value> &set);

} // namespace mobileba::mba
