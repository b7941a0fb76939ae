#include "hamlab/graph.hpp"

#include <algorithm>
#include <bit>

namespace hamlab {

namespace {

// Returns its argument so it can guard member initializers, which run
// before any constructor body.
int checkOrder(int order) {
    if (order < 0) throw DomainError("graph order must be non-negative");
    if (order > kMaxOrder) {
        throw CapabilityError("graph order " + std::to_string(order) +
                              " exceeds the dense-adjacency cap of 64");
    }
    return order;
}

}  // namespace

Digraph::Digraph(int order) : order_(checkOrder(order)), out_(order, 0), in_(order, 0) {}

Digraph::Digraph(int order, std::span<const std::pair<int, int>> arcs) : Digraph(order) {
    for (auto [u, v] : arcs) {
        check(u);
        check(v);
        if (u == v) throw DomainError("loops are not allowed");
        out_[u] |= bit(v);
        in_[v] |= bit(u);
    }
}

Digraph::Digraph(int order, std::initializer_list<std::pair<int, int>> arcs)
    : Digraph(order, std::span<const std::pair<int, int>>(arcs.begin(), arcs.size())) {}

Digraph Digraph::fromOutRows(int order, std::span<const Mask> rows) {
    checkOrder(order);
    if (static_cast<int>(rows.size()) != order) throw DomainError("row count mismatch");
    Digraph d(order);
    Mask valid = order == 64 ? ~Mask{0} : (bit(order) - 1);
    for (int u = 0; u < order; ++u) {
        if (rows[u] & ~valid) throw DomainError("adjacency row has bits beyond the order");
        if (rows[u] & bit(u)) throw DomainError("loops are not allowed");
        d.out_[u] = rows[u];
        Mask row = rows[u];
        while (row) {
            int v = std::countr_zero(row);
            row &= row - 1;
            d.in_[v] |= bit(u);
        }
    }
    return d;
}

int Digraph::outDegree(int u) const { return std::popcount(out_[check(u)]); }

int Digraph::inDegree(int v) const { return std::popcount(in_[check(v)]); }

int Digraph::arcCount() const {
    int total = 0;
    for (Mask row : out_) total += std::popcount(row);
    return total;
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < order_; ++u) {
        Mask row = out_[u];
        while (row) {
            int v = std::countr_zero(row);
            row &= row - 1;
            result.emplace_back(u, v);
        }
    }
    return result;
}

Digraph Digraph::withArc(int u, int v) const {
    check(u);
    check(v);
    if (u == v) throw DomainError("loops are not allowed");
    Digraph d = *this;
    d.out_[u] |= bit(v);
    d.in_[v] |= bit(u);
    return d;
}

Digraph::Induced Digraph::inducedSubgraph(std::span<const int> vertices) const {
    std::vector<int> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (int v : keep) check(v);
    Digraph sub(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if (i != j && arc(keep[i], keep[j])) {
                sub.out_[i] |= bit(static_cast<int>(j));
                sub.in_[j] |= bit(static_cast<int>(i));
            }
        }
    }
    return {std::move(sub), std::move(keep)};
}

Digraph Digraph::complete(int n) {
    Digraph d(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u != v) {
                d.out_[u] |= bit(v);
                d.in_[v] |= bit(u);
            }
        }
    }
    return d;
}

Digraph Digraph::directedCycle(int n) {
    if (n < 2) throw DomainError("directed cycle needs at least 2 vertices");
    Digraph d(n);
    for (int u = 0; u < n; ++u) {
        int v = (u + 1) % n;
        d.out_[u] |= bit(v);
        d.in_[v] |= bit(u);
    }
    return d;
}

Digraph Digraph::transitiveTournament(int n) {
    Digraph d(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            d.out_[u] |= bit(v);
            d.in_[v] |= bit(u);
        }
    }
    return d;
}

Digraph converse(const Digraph& d) {
    Digraph c(d.order());
    std::vector<Mask> rows(d.order());
    for (int v = 0; v < d.order(); ++v) rows[v] = d.inMask(v);
    return Digraph::fromOutRows(d.order(), rows);
}

UndirectedGraph::UndirectedGraph(int order) : order_(checkOrder(order)), adj_(order, 0) {}

UndirectedGraph::UndirectedGraph(int order, std::span<const std::pair<int, int>> edges)
    : UndirectedGraph(order) {
    for (auto [u, v] : edges) {
        check(u);
        check(v);
        if (u == v) throw DomainError("loops are not allowed");
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }
}

UndirectedGraph::UndirectedGraph(int order, std::initializer_list<std::pair<int, int>> edges)
    : UndirectedGraph(order, std::span<const std::pair<int, int>>(edges.begin(), edges.size())) {}

UndirectedGraph UndirectedGraph::fromRows(int order, std::span<const Mask> rows) {
    checkOrder(order);
    if (static_cast<int>(rows.size()) != order) throw DomainError("row count mismatch");
    UndirectedGraph g(order);
    Mask valid = order == 64 ? ~Mask{0} : (bit(order) - 1);
    for (int u = 0; u < order; ++u) {
        if (rows[u] & ~valid) throw DomainError("adjacency row has bits beyond the order");
        if (rows[u] & bit(u)) throw DomainError("loops are not allowed");
        g.adj_[u] = rows[u];
    }
    for (int u = 0; u < order; ++u) {
        for (int v = u + 1; v < order; ++v) {
            if (((g.adj_[u] >> v) & 1) != ((g.adj_[v] >> u) & 1)) {
                throw DomainError("adjacency rows are not symmetric");
            }
        }
    }
    return g;
}

int UndirectedGraph::degree(int v) const { return std::popcount(adj_[check(v)]); }

int UndirectedGraph::edgeCount() const {
    int total = 0;
    for (Mask row : adj_) total += std::popcount(row);
    return total / 2;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < order_; ++u) {
        Mask row = adj_[u] >> (u + 1) << (u + 1);  // only v > u
        while (row) {
            int v = std::countr_zero(row);
            row &= row - 1;
            result.emplace_back(u, v);
        }
    }
    return result;
}

UndirectedGraph UndirectedGraph::withEdge(int u, int v) const {
    check(u);
    check(v);
    if (u == v) throw DomainError("loops are not allowed");
    UndirectedGraph g = *this;
    g.adj_[u] |= bit(v);
    g.adj_[v] |= bit(u);
    return g;
}

UndirectedGraph::Induced UndirectedGraph::inducedSubgraph(std::span<const int> vertices) const {
    std::vector<int> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (int v : keep) check(v);
    UndirectedGraph sub(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            if (edge(keep[i], keep[j])) {
                sub.adj_[i] |= bit(static_cast<int>(j));
                sub.adj_[j] |= bit(static_cast<int>(i));
            }
        }
    }
    return {std::move(sub), std::move(keep)};
}

UndirectedGraph UndirectedGraph::complete(int n) {
    UndirectedGraph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u != v) g.adj_[u] |= bit(v);
        }
    }
    return g;
}

UndirectedGraph UndirectedGraph::path(int n) {
    UndirectedGraph g(n);
    for (int u = 0; u + 1 < n; ++u) {
        g.adj_[u] |= bit(u + 1);
        g.adj_[u + 1] |= bit(u);
    }
    return g;
}

UndirectedGraph UndirectedGraph::cycle(int n) {
    if (n < 3) throw DomainError("cycle needs at least 3 vertices");
    UndirectedGraph g = path(n);
    g.adj_[0] |= bit(n - 1);
    g.adj_[n - 1] |= bit(0);
    return g;
}

UndirectedGraph UndirectedGraph::completeBipartite(int a, int b) {
    UndirectedGraph g(a + b);
    for (int u = 0; u < a; ++u) {
        for (int v = a; v < a + b; ++v) {
            g.adj_[u] |= bit(v);
            g.adj_[v] |= bit(u);
        }
    }
    return g;
}

UndirectedGraph underlyingGraph(const Digraph& d) {
    UndirectedGraph g(d.order());
    std::vector<Mask> rows(d.order());
    for (int v = 0; v < d.order(); ++v) rows[v] = d.outMask(v) | d.inMask(v);
    return UndirectedGraph::fromRows(d.order(), rows);
}

std::vector<std::vector<int>> components(const UndirectedGraph& g) {
    std::vector<std::vector<int>> result;
    Mask seen = 0;
    for (int s = 0; s < g.order(); ++s) {
        if (seen & bit(s)) continue;
        Mask comp = bit(s);
        Mask frontier = bit(s);
        while (frontier) {
            Mask next = 0;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= g.adjMask(v) & ~comp;
            }
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        std::vector<int> vertices;
        while (comp) {
            vertices.push_back(std::countr_zero(comp));
            comp &= comp - 1;
        }
        result.push_back(std::move(vertices));
    }
    return result;
}

}  // namespace hamlab
