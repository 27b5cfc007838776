#pragma once

#include <cstdint>
#include <vector>

#include "rt/graph.hpp"

namespace rt {

/// True iff S spans no edge of G.
bool is_independent(const Graph& g, VertexSet s);

struct AlphaResult {
    int alpha = 0;
    VertexSet witness;
    std::uint64_t nodes = 0;
};

/// Exact maximum independent set size with one witness. Deterministic:
/// branch-and-bound on the vertex of maximum residual degree (ties to the
/// lowest index) with a greedy clique-cover bound.
AlphaResult alpha(const Graph& g);

/// True iff G[within] contains an independent set of k vertices
/// (early-exit bounded search).
bool has_independent_set(const Graph& g, VertexSet within, int k);

/// Same check on raw adjacency rows; used by the extremal search on its
/// incrementally built prefixes.
bool has_independent_set(const std::uint64_t* rows, std::uint64_t within, int k);

struct EnumerateResult {
    std::vector<VertexSet> sets; // ascending bitmask order
    bool truncated = false;
    std::uint64_t nodes = 0;
};

/// All independent sets of size exactly `target`. Stops after `cap` sets and
/// flags truncation; the cap guards pathological inputs, not the intended use.
EnumerateResult enumerate_independent_sets(const Graph& g, int target,
                                           std::size_t cap = 100000);

} // namespace rt
