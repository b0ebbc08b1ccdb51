#include "mobileba/trace.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace mobileba
{

namespace
{

using nlohmann::json;

json encode(Value v)
{
    return v.to_string();
}

json encode(const PairMessage &m)
{
    return json::array({encode(m.a), encode(m.b)});
}

json encode(const std::vector<Value> &set)
{
    json out = json::array();
    for (Value v : set)
        out.push_back(encode(v));
    return out;
}

json encode(const std::map<RelaySlot, PairMessage> &slots)
{
    json out = json::array();
    for (const auto &[slot, msg] : slots)
    {
        out.push_back(json::array({slot.origin.index, slot.target.index, slot.copy, encode(msg.a), encode(msg.b)}));
    }
    return out;
}

json encode(const Payload &payload)
{
    return std::visit(
        [](const auto &p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Value>)
            {
                return encode(p);
            }
            else if constexpr (std::is_same_v<T, PairMessage>)
            {
                return encode(p);
            }
            else
            {
                json out = json::array();
                for (const RelayCopy &c : p)
                {
                    out.push_back(json::array(
                        {c.origin.index, c.target.index, c.copy, encode(c.payload.a), encode(c.payload.b)}));
                }
                return json{{"bundle", out}};
            }
        },
        payload);
}

json encode(const ProcessorState &s)
{
    json out;
    out["a"] = encode(s.a);
    out["b"] = encode(s.b);
    out["A"] = encode(s.A);
    out["B"] = encode(s.B);
    out["decided"] = s.decided ? encode(*s.decided) : json(nullptr);
    out["held"] = encode(s.relay.held);
    out["inbox"] = encode(s.relay.inbox);
    return out;
}

std::string dump(const json &j)
{
    // std::map-backed objects keep keys sorted, which fixes the field order
    return j.dump();
}

} // namespace

bool Trace::controlled_in(ProcessorId p, int round) const
{
    if (round < 1 || round > static_cast<int>(rounds.size()))
        return false;
    const auto &c = rounds[static_cast<std::size_t>(round - 1)].controlled;
    return std::binary_search(c.begin(), c.end(), p);
}

View view_of(const Trace &trace, ProcessorId p)
{
    if (p.index < 1 || p.index > trace.header.n)
    {
        throw PreconditionError("processor " + std::to_string(p.index) + " out of range 1.." +
                                std::to_string(trace.header.n));
    }
    View view{p, {}};
    view.rounds.reserve(trace.rounds.size());
    for (const RoundTrace &rt : trace.rounds)
    {
        ViewRound vr;
        for (const auto &[edge, payload] : rt.sent)
        {
            if (edge.second == p)
                vr.received.emplace_back(edge.first, payload);
        }
        std::sort(vr.received.begin(), vr.received.end(),
                  [](const auto &x, const auto &y) { return x.first < y.first; });
        vr.state = rt.states_after.at(p.slot());
        view.rounds.push_back(std::move(vr));
    }
    return view;
}

std::string to_line(const TraceHeader &h)
{
    json j;
    j["kind"] = "header";
    j["n"] = h.n;
    j["m"] = h.m;
    j["T"] = h.rounds_per_step;
    j["K"] = h.window;
    j["source_value"] = encode(h.source_value);
    return dump(j);
}

std::string to_line(const RoundTrace &rt)
{
    json j;
    j["kind"] = "round";
    j["round"] = rt.round;
    json controlled = json::array();
    for (ProcessorId p : rt.controlled)
        controlled.push_back(p.index);
    j["controlled"] = controlled;
    json sent = json::array();
    for (const auto &[edge, payload] : rt.sent)
    {
        sent.push_back(json::array({edge.first.index, edge.second.index, encode(payload)}));
    }
    j["sent"] = sent;
    json states = json::array();
    for (const ProcessorState &s : rt.states_after)
        states.push_back(encode(s));
    j["states"] = states;
    return dump(j);
}

std::string to_line(const ViewRound &vr)
{
    json j;
    json received = json::array();
    for (const auto &[from, payload] : vr.received)
        received.push_back(json::array({from.index, encode(payload)}));
    j["received"] = received;
    j["state"] = encode(vr.state);
    return dump(j);
}

std::string to_line(const ProcessorState &state)
{
    return dump(encode(state));
}

std::string to_line(const Payload &payload)
{
    return dump(encode(payload));
}

void write_trace(std::ostream &os, const Trace &trace)
{
    os << to_line(trace.header) << '\n';
    for (const RoundTrace &rt : trace.rounds)
        os << to_line(rt) << '\n';
}

std::string serialize(const Trace &trace)
{
    std::ostringstream os;
    write_trace(os, trace);
    return os.str();
}

std::string serialize(const View &view)
{
    std::ostringstream os;
    os << "{\"owner\":" << view.owner.index << "}\n";
    for (const ViewRound &vr : view.rounds)
        os << to_line(vr) << '\n';
    return os.str();
}

} // namespace mobileba
