#include "mobileba/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace mobileba::net
{

Network::Network(int n, const std::vector<Edge> &edges)
    : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))),
      matrix_(static_cast<std::size_t>(std::max(n, 0)) * static_cast<std::size_t>(std::max(n, 0)), 0)
{
    if (n < 0)
        throw PreconditionError("negative processor count");
    for (auto [u, v] : edges)
    {
        if (!contains(u) || !contains(v))
        {
            throw PreconditionError("edge " + std::to_string(u.index) + "-" + std::to_string(v.index) +
                                    " outside 1.." + std::to_string(n));
        }
        if (u == v)
            throw PreconditionError("self-loop at " + std::to_string(u.index));
        auto &cell = matrix_[u.slot() * static_cast<std::size_t>(n_) + v.slot()];
        if (cell)
            continue;
        cell = 1;
        matrix_[v.slot() * static_cast<std::size_t>(n_) + u.slot()] = 1;
        adj_[u.slot()].push_back(v);
        adj_[v.slot()].push_back(u);
    }
    for (auto &row : adj_)
        std::sort(row.begin(), row.end());
}

Network Network::complete(int n)
{
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            edges.emplace_back(ProcessorId(u), ProcessorId(v));
    return Network(n, edges);
}

bool Network::adjacent(ProcessorId u, ProcessorId v) const
{
    if (!contains(u) || !contains(v))
        return false;
    return matrix_[u.slot() * static_cast<std::size_t>(n_) + v.slot()] != 0;
}

const std::vector<ProcessorId> &Network::neighbors(ProcessorId u) const
{
    if (!contains(u))
        throw PreconditionError("processor " + std::to_string(u.index) + " not in network");
    return adj_[u.slot()];
}

std::vector<Edge> Network::edges() const
{
    std::vector<Edge> out;
    for (int u = 1; u <= n_; ++u)
        for (ProcessorId v : adj_[static_cast<std::size_t>(u - 1)])
            if (u < v.index)
                out.emplace_back(ProcessorId(u), v);
    return out;
}

int Network::edge_count() const
{
    std::size_t total = 0;
    for (const auto &row : adj_)
        total += row.size();
    return static_cast<int>(total / 2);
}

bool Network::is_complete() const
{
    return edge_count() == n_ * (n_ - 1) / 2;
}

bool Network::is_connected() const
{
    if (n_ <= 1)
        return true;
    return components_without({}).size() == 1;
}

std::vector<std::vector<ProcessorId>> Network::components_without(const std::vector<ProcessorId> &removed) const
{
    std::vector<char> gone(static_cast<std::size_t>(n_), 0);
    for (ProcessorId r : removed)
        if (contains(r))
            gone[r.slot()] = 1;
    std::vector<std::vector<ProcessorId>> comps;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (int start = 1; start <= n_; ++start)
    {
        auto s = static_cast<std::size_t>(start - 1);
        if (gone[s] || seen[s])
            continue;
        std::vector<ProcessorId> comp;
        std::deque<ProcessorId> queue{ProcessorId(start)};
        seen[s] = 1;
        while (!queue.empty())
        {
            ProcessorId x = queue.front();
            queue.pop_front();
            comp.push_back(x);
            for (ProcessorId y : adj_[x.slot()])
            {
                if (!gone[y.slot()] && !seen[y.slot()])
                {
                    seen[y.slot()] = 1;
                    queue.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Network read_edge_list(std::istream &is)
{
    std::vector<Edge> edges;
    std::optional<int> declared;
    int max_id = 0;
    std::string line;
    int line_no = 0;
    bool first_content = true;
    while (std::getline(is, line))
    {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        auto parse_int = [&](const std::string &t) {
            try
            {
                std::size_t used = 0;
                int x = std::stoi(t, &used);
                if (used != t.size())
                    throw std::invalid_argument(t);
                return x;
            }
            catch (const std::exception &)
            {
                throw PreconditionError("edge list line " + std::to_string(line_no) + ": bad integer '" + t + "'");
            }
        };
        if (tokens.size() == 1 && first_content)
        {
            declared = parse_int(tokens[0]);
            first_content = false;
            continue;
        }
        first_content = false;
        if (tokens.size() != 2)
        {
            throw PreconditionError("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        int u = parse_int(tokens[0]);
        int v = parse_int(tokens[1]);
        if (u < 1 || v < 1)
            throw PreconditionError("edge list line " + std::to_string(line_no) + ": ids are 1-based");
        max_id = std::max({max_id, u, v});
        edges.emplace_back(ProcessorId(u), ProcessorId(v));
    }
    int n = declared.value_or(max_id);
    if (n < max_id)
    {
        throw PreconditionError("edge list declares " + std::to_string(n) + " vertices but uses id " +
                                std::to_string(max_id));
    }
    return Network(n, edges);
}

Network read_edge_list_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open graph file '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream &os, const Network &g)
{
    os << g.size() << '\n';
    for (auto [u, v] : g.edges())
        os << u.index << ' ' << v.index << '\n';
}

int min_degree(const Network &g)
{
    if (g.size() < 1)
        throw PreconditionError("min_degree needs at least one vertex");
    int best = std::numeric_limits<int>::max();
    for (int u = 1; u <= g.size(); ++u)
        best = std::min(best, g.degree(ProcessorId(u)));
    return best;
}

std::vector<ProcessorId> common_neighbors(const Network &g, ProcessorId u, ProcessorId v)
{
    if (u == v)
        throw PreconditionError("common_neighbors needs distinct vertices");
    std::vector<ProcessorId> out;
    const auto &nu = g.neighbors(u);
    const auto &nv = g.neighbors(v);
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
    return out;
}

namespace
{

// Unit vertex-capacity max flow on the split graph: vertex x becomes x_in -> x_out.
// Arcs of every node are kept in ascending order of the vertex they lead to, and
// augmenting paths are found by BFS, so the result is fully deterministic.
class SplitFlow
{
public:
    SplitFlow(const Network &g, ProcessorId s, ProcessorId t) : g_(g), s_(s), t_(t)
    {
        const int n = g.size();
        heads_.assign(static_cast<std::size_t>(2 * n), {});
        for (int x = 1; x <= n; ++x)
        {
            ProcessorId px(x);
            // internal vertices carry one unit; endpoints are unbounded
            int cap = (px == s || px == t) ? n : 1;
            add_arc(in(px), out(px), cap);
        }
        // link arcs are unbounded so every minimum cut consists of vertex arcs;
        // the direct s-t link is the one exception and counts as a single path
        for (int x = 1; x <= n; ++x)
            for (ProcessorId y : g.neighbors(ProcessorId(x)))
                add_arc(out(ProcessorId(x)), in(y), (ProcessorId(x) == s && y == t) ? 1 : n);
        for (auto &h : heads_)
        {
            std::stable_sort(h.begin(), h.end(), [this](int a, int b) { return arcs_[a].to < arcs_[b].to; });
        }
    }

    int run(int limit)
    {
        int flow = 0;
        const int source = out(s_);
        const int sink = in(t_);
        while (flow < limit)
        {
            std::vector<int> via(heads_.size(), -1);
            std::vector<char> seen(heads_.size(), 0);
            std::deque<int> queue{source};
            seen[static_cast<std::size_t>(source)] = 1;
            while (!queue.empty() && !seen[static_cast<std::size_t>(sink)])
            {
                int x = queue.front();
                queue.pop_front();
                for (int a : heads_[static_cast<std::size_t>(x)])
                {
                    const Arc &arc = arcs_[static_cast<std::size_t>(a)];
                    if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)])
                    {
                        seen[static_cast<std::size_t>(arc.to)] = 1;
                        via[static_cast<std::size_t>(arc.to)] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if (!seen[static_cast<std::size_t>(sink)])
                break;
            for (int x = sink; x != source;)
            {
                int a = via[static_cast<std::size_t>(x)];
                arcs_[static_cast<std::size_t>(a)].cap -= 1;
                arcs_[static_cast<std::size_t>(a ^ 1)].cap += 1;
                x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            ++flow;
        }
        return flow;
    }

    // Vertices reachable from the source in the residual graph, after run().
    std::vector<char> residual_reach() const
    {
        std::vector<char> seen(heads_.size(), 0);
        std::deque<int> queue{out(s_)};
        seen[static_cast<std::size_t>(out(s_))] = 1;
        while (!queue.empty())
        {
            int x = queue.front();
            queue.pop_front();
            for (int a : heads_[static_cast<std::size_t>(x)])
            {
                const Arc &arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)])
                {
                    seen[static_cast<std::size_t>(arc.to)] = 1;
                    queue.push_back(arc.to);
                }
            }
        }
        return seen;
    }

    std::vector<std::vector<ProcessorId>> paths() const
    {
        // an arc out(x)->in(y) carries flow iff its residual twin is positive
        std::vector<std::vector<int>> used(heads_.size());
        for (std::size_t a = 0; a < arcs_.size(); a += 2)
        {
            const Arc &fwd = arcs_[a];
            const Arc &back = arcs_[a + 1];
            int from = back.to;
            if (from % 2 == 1 && fwd.to % 2 == 0 && back.cap > 0)
                used[static_cast<std::size_t>(from)].push_back(fwd.to);
        }
        for (auto &u : used)
            std::sort(u.begin(), u.end());
        std::vector<std::vector<ProcessorId>> result;
        auto &starts = used[static_cast<std::size_t>(out(s_))];
        for (int first : starts)
        {
            std::vector<ProcessorId> path{s_};
            int node = first;
            while (true)
            {
                ProcessorId v = ProcessorId::from_slot(static_cast<std::size_t>(node / 2));
                path.push_back(v);
                if (v == t_)
                    break;
                auto &next = used[static_cast<std::size_t>(out(v))];
                node = next.front();
                next.erase(next.begin());
            }
            result.push_back(std::move(path));
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    static int in(ProcessorId x) { return 2 * static_cast<int>(x.slot()); }
    static int out(ProcessorId x) { return 2 * static_cast<int>(x.slot()) + 1; }

private:
    struct Arc
    {
        int to;
        int cap;
    };

    void add_arc(int from, int to, int cap)
    {
        heads_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, cap});
        heads_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, 0});
    }

    const Network &g_;
    ProcessorId s_;
    ProcessorId t_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> heads_;
};

void require_pair(const Network &g, ProcessorId u, ProcessorId v)
{
    if (!g.contains(u) || !g.contains(v))
        throw PreconditionError("processor out of range");
    if (u == v)
        throw PreconditionError("endpoints must differ");
}

} // namespace

int local_connectivity(const Network &g, ProcessorId u, ProcessorId v)
{
    require_pair(g, u, v);
    SplitFlow flow(g, u, v);
    return flow.run(g.size());
}

std::vector<ProcessorId> min_vertex_cut(const Network &g, ProcessorId u, ProcessorId v)
{
    require_pair(g, u, v);
    if (g.adjacent(u, v))
        throw PreconditionError("adjacent vertices have no separating vertex set");
    SplitFlow flow(g, u, v);
    flow.run(g.size());
    auto reach = flow.residual_reach();
    std::vector<ProcessorId> cut;
    for (int x = 1; x <= g.size(); ++x)
    {
        ProcessorId px(x);
        if (px == u || px == v)
            continue;
        if (reach[static_cast<std::size_t>(SplitFlow::in(px))] && !reach[static_cast<std::size_t>(SplitFlow::out(px))])
            cut.push_back(px);
    }
    return cut;
}

int vertex_connectivity(const Network &g)
{
    const int n = g.size();
    if (n < 2)
        throw PreconditionError("vertex_connectivity needs at least two vertices");
    if (!g.is_connected())
        return 0;
    int best = n - 1;
    for (int u = 1; u <= n; ++u)
    {
        for (int v = u + 1; v <= n; ++v)
        {
            if (g.adjacent(ProcessorId(u), ProcessorId(v)))
                continue;
            SplitFlow flow(g, ProcessorId(u), ProcessorId(v));
            best = std::min(best, flow.run(best));
        }
    }
    return best;
}

int local_connectivity_avoiding_source(const Network &g, ProcessorId s)
{
    if (g.size() < 3)
        throw PreconditionError("local_connectivity_avoiding_source needs n >= 3");
    int best = std::numeric_limits<int>::max();
    for (int p = 1; p <= g.size(); ++p)
    {
        if (ProcessorId(p) == s)
            continue;
        best = std::min(best, local_connectivity(g, s, ProcessorId(p)));
    }
    return best;
}

std::optional<SourceCut> min_source_cut(const Network &g, ProcessorId s)
{
    std::optional<SourceCut> best;
    for (int p = 1; p <= g.size(); ++p)
    {
        ProcessorId far(p);
        if (far == s || g.adjacent(s, far))
            continue;
        auto cut = min_vertex_cut(g, s, far);
        if (!best || cut.size() < best->cut.size())
            best = SourceCut{far, std::move(cut)};
    }
    return best;
}

bool separates(const Network &g, const std::vector<ProcessorId> &cut, ProcessorId s, ProcessorId p)
{
    if (std::find(cut.begin(), cut.end(), s) != cut.end() || std::find(cut.begin(), cut.end(), p) != cut.end())
        return false;
    for (const auto &comp : g.components_without(cut))
    {
        bool has_s = std::binary_search(comp.begin(), comp.end(), s);
        bool has_p = std::binary_search(comp.begin(), comp.end(), p);
        if (has_s || has_p)
            return !(has_s && has_p);
    }
    return false;
}

PathSystem disjoint_paths(const Network &g, ProcessorId u, ProcessorId v, int k)
{
    require_pair(g, u, v);
    if (k < 0)
        throw PreconditionError("negative path count");
    SplitFlow flow(g, u, v);
    int got = flow.run(k);
    if (got < k)
    {
        throw PreconditionError("only " + std::to_string(local_connectivity(g, u, v)) +
                                " internally disjoint paths exist between " + std::to_string(u.index) + " and " +
                                std::to_string(v.index) + ", requested " + std::to_string(k));
    }
    return PathSystem{u, v, flow.paths()};
}

bool is_valid_path_system(const Network &g, const PathSystem &ps)
{
    std::vector<char> used(static_cast<std::size_t>(g.size()), 0);
    for (const auto &path : ps.paths)
    {
        if (path.size() < 2 || path.front() != ps.source || path.back() != ps.target)
            return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!g.adjacent(path[i], path[i + 1]))
                return false;
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
        {
            ProcessorId x = path[i];
            if (x == ps.source || x == ps.target || used[x.slot()])
                return false;
            used[x.slot()] = 1;
        }
    }
    return true;
}

Network make_two_clique_network(int clique_size, int bridge_size)
{
    if (clique_size < 1 || bridge_size < 0)
        throw PreconditionError("two-clique network needs cliqueSize >= 1 and bridgeSize >= 0");
    const int n = 2 * clique_size + bridge_size;
    std::vector<Edge> edges;
    auto clique = [&](int first) {
        for (int u = first; u < first + clique_size; ++u)
            for (int v = u + 1; v < first + clique_size; ++v)
                edges.emplace_back(ProcessorId(u), ProcessorId(v));
    };
    clique(1);
    clique(1 + clique_size);
    for (int b = 2 * clique_size + 1; b <= n; ++b)
        for (int x = 1; x <= n; ++x)
            if (x != b)
                edges.emplace_back(ProcessorId(std::min(x, b)), ProcessorId(std::max(x, b)));
    return Network(n, edges);
}

Network make_cycle(int n)
{
    if (n < 3)
        throw PreconditionError("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u)
        edges.emplace_back(ProcessorId(u), ProcessorId(u % n + 1));
    return Network(n, edges);
}

Network make_star(int n)
{
    if (n < 2)
        throw PreconditionError("star needs n >= 2");
    std::vector<Edge> edges;
    for (int u = 2; u <= n; ++u)
        edges.emplace_back(ProcessorId(1), ProcessorId(u));
    return Network(n, edges);
}

Network make_complete_minus_matching(int n, int pairs)
{
    if (pairs < 0 || 2 * pairs > n)
        throw PreconditionError("matching of " + std::to_string(pairs) + " edges does not fit in " +
                                std::to_string(n) + " vertices");
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u)
    {
        for (int v = u + 1; v <= n; ++v)
        {
            bool matched = (u % 2 == 1) && v == u + 1 && v <= 2 * pairs;
            if (!matched)
                edges.emplace_back(ProcessorId(u), ProcessorId(v));
        }
    }
    return Network(n, edges);
}

} // namespace mobileba::net
