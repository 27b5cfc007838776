#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rt/bits.hpp"

namespace rt {

inline constexpr int kMaxVertices = 64;

/// Simple undirected graph on at most 64 vertices with one bitmask row per
/// vertex. Immutable after construction; every constructor validates symmetry,
/// loop-freeness and that no bit is set at or above the vertex count.
class Graph {
public:
    Graph() = default;

    static Graph empty(int n);
    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
    static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges);
    /// Adopts prebuilt adjacency rows (validated).
    static Graph from_rows(std::vector<std::uint64_t> rows);

    int order() const { return n_; }
    long long edge_count() const;

    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }
    int degree(int v) const { return std::popcount(adj_[v]); }
    std::uint64_t row(int v) const { return adj_[v]; }
    VertexSet neighbors(int v) const { return VertexSet{adj_[v]}; }
    VertexSet vertices() const { return VertexSet::full(n_); }

    /// Union of neighborhoods over S; S itself is not subtracted.
    VertexSet neighborhood(VertexSet s) const;

    /// Subgraph induced by S, vertices relabeled in ascending order.
    Graph induced(VertexSet s) const;

    bool is_triangle_free() const;

    /// Every a in A adjacent to every b in B. Throws if A and B overlap.
    bool is_fully_joined(VertexSet a, VertexSet b) const;

    friend bool operator==(const Graph& a, const Graph& b) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> adj_;

    void validate() const;
};

/// Parameter pair (n, s) with the derived quantities used throughout;
/// derived values are always recomputed, never stored.
struct Params {
    int n = 0;
    int s = 0;

    /// size of the three small classes of G(n;4,s)
    int small_class() const { return 3 * n - 8 * s; }
    /// size of a mould class, 3s - n
    int surplus() const { return 3 * s - n; }
    /// degree threshold of the low-degree census
    int low_degree() const { return 4 * n - 10 * s; }
    /// induction measure 11s - 4n
    int delta() const { return 11 * s - 4 * n; }
};

} // namespace rt
