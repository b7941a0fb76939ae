#pragma once

// Loop-free digraphs and simple undirected graphs on up to 64 vertices,
// stored as one 64-bit adjacency mask per vertex.  Values are immutable
// after construction; "modifying" helpers return fresh copies.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hamlab/errors.hpp"

namespace hamlab {

using Mask = std::uint64_t;

constexpr int kMaxOrder = 64;

inline Mask bit(int v) { return Mask{1} << v; }

class Digraph {
public:
    Digraph() = default;  // order 0 (empty induced subgraphs are legal values)
    explicit Digraph(int order);
    Digraph(int order, std::span<const std::pair<int, int>> arcs);
    Digraph(int order, std::initializer_list<std::pair<int, int>> arcs);

    // Rows are out-adjacency masks; diagonal bits must be clear.
    static Digraph fromOutRows(int order, std::span<const Mask> rows);

    int order() const { return order_; }
    bool arc(int u, int v) const { return (out_[check(u)] >> check(v)) & 1; }
    int outDegree(int u) const;
    int inDegree(int v) const;
    int degree(int v) const { return outDegree(v) + inDegree(v); }
    Mask outMask(int u) const { return out_[check(u)]; }
    Mask inMask(int v) const { return in_[check(v)]; }
    int arcCount() const;
    std::vector<std::pair<int, int>> arcs() const;

    Digraph withArc(int u, int v) const;

    // Subgraph induced on `vertices` (deduplicated, relabeled in ascending
    // original order).  `originalIndex[i]` is the source label of vertex i.
    struct Induced;
    Induced inducedSubgraph(std::span<const int> vertices) const;

    bool operator==(const Digraph& other) const = default;

    static Digraph complete(int n);
    static Digraph directedCycle(int n);
    static Digraph transitiveTournament(int n);

private:
    int check(int v) const {
        if (v < 0 || v >= order_) throw DomainError("vertex index out of range");
        return v;
    }

    int order_ = 0;
    std::vector<Mask> out_;
    std::vector<Mask> in_;
};

struct Digraph::Induced {
    Digraph graph;
    std::vector<int> originalIndex;
};

Digraph converse(const Digraph& d);

class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(int order);
    UndirectedGraph(int order, std::span<const std::pair<int, int>> edges);
    UndirectedGraph(int order, std::initializer_list<std::pair<int, int>> edges);

    static UndirectedGraph fromRows(int order, std::span<const Mask> rows);

    int order() const { return order_; }
    bool edge(int u, int v) const { return (adj_[check(u)] >> check(v)) & 1; }
    int degree(int v) const;
    Mask adjMask(int v) const { return adj_[check(v)]; }
    int edgeCount() const;
    std::vector<std::pair<int, int>> edges() const;

    UndirectedGraph withEdge(int u, int v) const;

    struct Induced;
    Induced inducedSubgraph(std::span<const int> vertices) const;

    bool operator==(const UndirectedGraph& other) const = default;

    static UndirectedGraph complete(int n);
    static UndirectedGraph path(int n);
    static UndirectedGraph cycle(int n);
    static UndirectedGraph completeBipartite(int a, int b);

private:
    int check(int v) const {
        if (v < 0 || v >= order_) throw DomainError("vertex index out of range");
        return v;
    }

    int order_ = 0;
    std::vector<Mask> adj_;
};

struct UndirectedGraph::Induced {
    UndirectedGraph graph;
    std::vector<int> originalIndex;
};

// Undirected shadow of a digraph: edge uv iff at least one of the two arcs.
UndirectedGraph underlyingGraph(const Digraph& d);

// Connected components, each sorted ascending; components ordered by their
// smallest vertex.
std::vector<std::vector<int>> components(const UndirectedGraph& g);

}  // namespace hamlab
