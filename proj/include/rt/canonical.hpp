#pragma once

#include <cstdint>
#include <vector>

#include "rt/graph.hpp"

namespace rt {

/// Canonical form of a graph: vertex count plus the adjacency columns of a
/// canonically relabeled copy (column j holds the bits towards vertices
/// 0..j-1, earlier vertices more significant). Equal forms iff isomorphic.
struct CanonicalForm {
    int n = 0;
    std::vector<std::uint64_t> cols;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.cols < b.cols;
    }
    std::uint64_t hash() const;
};

/// Computed by iterated degree refinement plus backtracking over the residual
/// color classes, maximizing the adjacency code. Twin vertices are branched
/// only once.
CanonicalForm canonical_form(const Graph& g);

/// The canonically relabeled copy itself.
Graph canonical_graph(const Graph& g);

/// Rebuild the graph a form encodes.
Graph graph_from_form(const CanonicalForm& form);

bool isomorphic(const Graph& a, const Graph& b);

} // namespace rt
