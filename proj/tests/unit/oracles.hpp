#pragma once

// Independent reference implementations used only by the tests.

#include "mobileba/core.hpp"
#include "mobileba/netgraph.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle
{

using mobileba::ProcessorId;
using mobileba::Value;
using mobileba::net::Network;

inline Network random_graph(std::mt19937_64 &rng, int n, double density)
{
    std::bernoulli_distribution coin(density);
    std::vector<mobileba::net::Edge> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (coin(rng))
                edges.emplace_back(ProcessorId(u), ProcessorId(v));
    return Network(n, edges);
}

/// Reachability from a to b avoiding `removed` and optionally the direct edge a-b.
inline bool reachable(const Network &g, int a, int b, std::uint32_t removed, bool skip_direct)
{
    const int n = g.size();
    std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
    std::vector<int> stack{a};
    seen[static_cast<std::size_t>(a)] = 1;
    while (!stack.empty())
    {
        int x = stack.back();
        stack.pop_back();
        if (x == b)
            return true;
        for (int y = 1; y <= n; ++y)
        {
            if (seen[static_cast<std::size_t>(y)] || (removed >> (y - 1) & 1u))
                continue;
            if (!g.adjacent(ProcessorId(x), ProcessorId(y)))
                continue;
            if (skip_direct && ((x == a && y == b) || (x == b && y == a)))
                continue;
            seen[static_cast<std::size_t>(y)] = 1;
            stack.push_back(y);
        }
    }
    return false;
}

inline bool connected_without(const Network &g, std::uint32_t removed)
{
    int first = 0;
    for (int v = 1; v <= g.size(); ++v)
        if (!(removed >> (v - 1) & 1u))
        {
            first = v;
            break;
        }
    if (first == 0)
        return true;
    for (int v = 1; v <= g.size(); ++v)
        if (!(removed >> (v - 1) & 1u) && !reachable(g, first, v, removed, false))
            return false;
    return true;
}

/// Smallest vertex set whose removal disconnects g (n-1 for complete graphs).
inline int brute_connectivity(const Network &g)
{
    const int n = g.size();
    if (!connected_without(g, 0))
        return 0;
    int best = n - 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    {
        int size = __builtin_popcount(mask);
        if (size >= best || size > n - 2)
            continue;
        if (!connected_without(g, mask))
            best = size;
    }
    return best;
}

/// Smallest a-b separator avoiding a and b; the direct edge, if any, adds one.
inline int brute_local(const Network &g, int a, int b)
{
    const int n = g.size();
    const bool direct = g.adjacent(ProcessorId(a), ProcessorId(b));
    int best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    {
        if ((mask >> (a - 1) & 1u) || (mask >> (b - 1) & 1u))
            continue;
        int size = __builtin_popcount(mask);
        if (size >= best)
            continue;
        if (!reachable(g, a, b, mask, true))
            best = size;
    }
    return best + (direct ? 1 : 0);
}

inline int brute_avoiding_source(const Network &g, int s)
{
    int best = g.size();
    for (int p = 1; p <= g.size(); ++p)
        if (p != s)
            best = std::min(best, brute_local(g, s, p));
    return best;
}

struct Update
{
    std::optional<Value> decided;
    std::set<Value> A;
    std::set<Value> B;
    Value a;
    Value b;
};

/// Direct transcription of the round rule: counts every candidate symbol of the
/// alphabet plus bot2 separately, with no shared helpers.
inline Update round_rule(int self, const std::vector<std::pair<Value, Value>> &recv, int round, int mu,
                         std::optional<Value> previous, int alphabet)
{
    const int n = static_cast<int>(recv.size());
    Update u;
    u.decided = previous;
    std::set<Value> universe{Value::bot0(), Value::bot2()};
    for (int k = 0; k < alphabet; ++k)
        universe.insert(Value::plain(k));
    for (const auto &[a, b] : recv)
    {
        universe.insert(a);
        universe.insert(b);
    }
    for (Value x : universe)
    {
        int same = 0;
        for (const auto &r : recv)
            same += r.first == x ? 1 : 0;
        if (same >= n - 2 * mu)
        {
            u.decided = x;
            break;
        }
    }
    const int special = round / 2 + 1;
    auto build = [&](int threshold) {
        std::set<Value> out;
        for (Value x : universe)
        {
            if (x == Value::bot0())
                continue;
            int acount = 0;
            int bcount = 0;
            for (const auto &r : recv)
            {
                acount += r.first == x ? 1 : 0;
                bcount += (r.second == x || r.second == Value::bot2()) ? 1 : 0;
            }
            bool via_special = special <= n && recv[static_cast<std::size_t>(special - 1)].first == x &&
                               bcount > threshold;
            if (via_special || acount > threshold)
                out.insert(x);
        }
        return out;
    };
    if (self == special)
    {
        u.A = build(3 * mu);
        u.B = u.A;
    }
    else
    {
        u.A = build(4 * mu);
        u.B = build(2 * mu);
    }
    auto summary = [](const std::set<Value> &s) {
        if (s.empty())
            return Value::bot0();
        if (s.size() > 1)
            return Value::bot2();
        return *s.begin();
    };
    u.a = summary(u.A);
    u.b = summary(u.B);
    return u;
}

} // namespace oracle
