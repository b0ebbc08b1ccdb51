#pragma once

#include "mobileba/core.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mobileba
{

struct RoundTrace
{
    int round = 1;
    std::vector<ProcessorId> controlled; // sorted
    std::map<std::pair<ProcessorId, ProcessorId>, Payload> sent;
    std::vector<ProcessorState> states_after; // indexed by ProcessorId::slot()

    bool operator==(const RoundTrace &) const = default;
};

struct TraceHeader
{
    int n = 0;
    int m = 0;
    int rounds_per_step = 1; // T
    int window = 1;          // K
    Value source_value;

    bool operator==(const TraceHeader &) const = default;
};

struct Trace
{
    TraceHeader header;
    std::vector<RoundTrace> rounds;

    bool controlled_in(ProcessorId p, int round) const;
    bool operator==(const Trace &) const = default;
};

struct ViewRound
{
    Inbox received; // sorted by sender
    ProcessorState state;

    bool operator==(const ViewRound &) const = default;
};

/// Everything a single processor can observe: what it received and what it stored.
struct View
{
    ProcessorId owner;
    std::vector<ViewRound> rounds;

    bool operator==(const View &) const = default;
};

View view_of(const Trace &trace, ProcessorId p);

// Line-delimited serialization. Keys are emitted in a fixed order, so byte
// equality of the output is equivalent to equality of the serialized object.
std::string to_line(const TraceHeader &header);
std::string to_line(const RoundTrace &round);
std::string to_line(const ViewRound &round);
std::string to_line(const ProcessorState &state);
std::string to_line(const Payload &payload);
void write_trace(std::ostream &os, const Trace &trace);
std::string serialize(const Trace &trace);
std::string serialize(const View &view);

} // namespace mobileba
