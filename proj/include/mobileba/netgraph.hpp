#pragma once

#include "mobileba/core.hpp"

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace mobileba::net
{

using Edge = std::pair<ProcessorId, ProcessorId>;

/// Undirected simple graph on processors 1..n. Immutable once built.
class Network
{
public:
    Network() = default;
    explicit Network(int n, const std::vector<Edge> &edges = {});

    static Network complete(int n);

    int size() const { return n_; }
    bool adjacent(ProcessorId u, ProcessorId v) const;
    const std::vector<ProcessorId> &neighbors(ProcessorId u) const;
    int degree(ProcessorId u) const { return static_cast<int>(neighbors(u).size()); }
    std::vector<Edge> edges() const; // u < v, sorted
    int edge_count() const;

    bool contains(ProcessorId u) const { return u.index >= 1 && u.index <= n_; }
    bool is_complete() const;
    bool is_connected() const;
    /// Connected components of the graph with `removed` deleted.
    std::vector<std::vector<ProcessorId>> components_without(const std::vector<ProcessorId> &removed) const;

    bool operator==(const Network &) const = default;

private:
    int n_ = 0;
    std::vector<std::vector<ProcessorId>> adj_;
    std::vector<char> matrix_;
};

/// Edge-list text: optional first line holding only the vertex count, then one
/// "u v" pair per line (1-based). Blank lines and '#' comments are ignored.
Network read_edge_list(std::istream &is);
Network read_edge_list_file(const std::string &path);
void write_edge_list(std::ostream &os, const Network &g);

struct PathSystem
{
    ProcessorId source;
    ProcessorId target;
    std::vector<std::vector<ProcessorId>> paths;

    bool operator==(const PathSystem &) const = default;
};

int min_degree(const Network &g);
std::vector<ProcessorId> common_neighbors(const Network &g, ProcessorId u, ProcessorId v);

/// Maximum number of internally vertex-disjoint u-v paths (the edge uv counts as one).
int local_connectivity(const Network &g, ProcessorId u, ProcessorId v);
/// Minimum vertex set separating non-adjacent u and v.
std::vector<ProcessorId> min_vertex_cut(const Network &g, ProcessorId u, ProcessorId v);

int vertex_connectivity(const Network &g);
int local_connectivity_avoiding_source(const Network &g, ProcessorId s);

struct SourceCut
{
    ProcessorId far;                 // a processor cut off from the source
    std::vector<ProcessorId> cut;    // never contains the source
};
/// Smallest separator between s and some non-adjacent processor, if any exists.
std::optional<SourceCut> min_source_cut(const Network &g, ProcessorId s);

bool separates(const Network &g, const std::vector<ProcessorId> &cut, ProcessorId s, ProcessorId p);

PathSystem disjoint_paths(const Network &g, ProcessorId u, ProcessorId v, int k);
bool is_valid_path_system(const Network &g, const PathSystem &ps);

Network make_two_clique_network(int clique_size, int bridge_size);
Network make_cycle(int n);
Network make_star(int n);
/// Complete graph minus the matching {1,2},{3,4},... of the given size.
Network make_complete_minus_matching(int n, int pairs);

} // namespace mobileba::net
