#include "rt/graph.hpp"

#include <stdexcept>
#include <string>

namespace rt {

void Graph::validate() const {
    if (n_ < 0 || n_ > kMaxVertices)
        throw std::invalid_argument("graph capacity: n must be in [0, 64], got " + std::to_string(n_));
    if (static_cast<int>(adj_.size()) != n_)
        throw std::invalid_argument("graph: row count does not match vertex count");
    const std::uint64_t universe = VertexSet::full(n_).bits;
    for (int v = 0; v < n_; ++v) {
        if (adj_[v] & ~universe)
            throw std::invalid_argument("graph: adjacency bit beyond vertex count");
        if ((adj_[v] >> v) & 1u)
            throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(v));
        for (int u : VertexSet{adj_[v]})
            if (!((adj_[u] >> v) & 1u))
                throw std::invalid_argument("graph: adjacency not symmetric");
    }
}

Graph Graph::empty(int n) {
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n < 0 ? 0 : n), 0);
    g.validate();
    return g;
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("graph capacity: n must be in [0, 64], got " + std::to_string(n));
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        if (u == v)
            throw std::invalid_argument("self-loop rejected at vertex " + std::to_string(u));
        g.adj_[u] |= std::uint64_t{1} << v;
        g.adj_[v] |= std::uint64_t{1} << u;
    }
    g.validate();
    return g;
}

Graph Graph::from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

Graph Graph::from_rows(std::vector<std::uint64_t> rows) {
    Graph g;
    g.n_ = static_cast<int>(rows.size());
    g.adj_ = std::move(rows);
    g.validate();
    return g;
}

long long Graph::edge_count() const {
    long long deg_sum = 0;
    for (int v = 0; v < n_; ++v) deg_sum += degree(v);
    return deg_sum / 2;
}

VertexSet Graph::neighborhood(VertexSet s) const {
    if (!s.subset_of(vertices()))
        throw std::invalid_argument("neighborhood: set not within vertex range");
    std::uint64_t acc = 0;
    for (int v : s) acc |= adj_[v];
    return VertexSet{acc};
}

Graph Graph::induced(VertexSet s) const {
    if (!s.subset_of(vertices()))
        throw std::invalid_argument("induced: set not within vertex range");
    std::vector<int> label(static_cast<std::size_t>(n_), -1);
    int m = 0;
    for (int v : s) label[static_cast<std::size_t>(v)] = m++;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (int v : s)
        for (int u : VertexSet{adj_[v]} & s)
            rows[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])] |=
                std::uint64_t{1} << label[static_cast<std::size_t>(u)];
    return from_rows(std::move(rows));
}

bool Graph::is_triangle_free() const {
    for (int v = 0; v < n_; ++v) {
        // check edges vu with u > v only; common neighbor = triangle
        for (int u : VertexSet{adj_[v] >> v >> 1})
            if (adj_[v] & adj_[u + v + 1]) return false;
    }
    return true;
}

bool Graph::is_fully_joined(VertexSet a, VertexSet b) const {
    if (a.intersects(b))
        throw std::invalid_argument("is_fully_joined: sets overlap");
    if (!a.subset_of(vertices()) || !b.subset_of(vertices()))
        throw std::invalid_argument("is_fully_joined: set not within vertex range");
    for (int v : a)
        if (!b.subset_of(VertexSet{adj_[v]})) return false;
    return true;
}

} // namespace rt
