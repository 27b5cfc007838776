#pragma once

#include <vector>

#include "rt/fortress.hpp"
#include "rt/graph.hpp"

namespace rt {

/// Generalized Zykov symmetrization: delete all edges meeting B, then join A
/// to B completely. A and B must be disjoint.
Graph sym(const Graph& g, VertexSet a, VertexSet b);

struct Matching {
    std::vector<std::pair<int, int>> pairs; // (u in U, w in W), ascending by u
    VertexSet covered;
    int size() const { return static_cast<int>(pairs.size()); }
};

/// Maximum matching between U and W along G-edges, by augmenting paths.
/// Among maximum matchings, one covering as many `prefer` vertices as
/// possible (size first, preference second).
Matching max_matching(const Graph& g, VertexSet u, VertexSet w, VertexSet prefer = {});

/// Picks B inside A2, disjoint from a maximum matching M out of
/// V \ (A1 u A2) into A2: the lowest-index unmatched vertices, optionally
/// forced to contain `must_include`. Throws when fewer than `size` vertices
/// remain unmatched.
VertexSet select_B(const Graph& g, VertexSet a1, VertexSet a2, int size,
                   VertexSet prefer = {}, VertexSet must_include = {});

struct SymReport {
    Graph result;
    bool triangle_free = false;
    bool alpha_ok = false;        // alpha(result) <= s
    bool edges_preserved = false; // e(result) == e(input)
    bool all_ok() const { return triangle_free && alpha_ok && edges_preserved; }
};

/// sym plus recomputed extremal-membership proxies.
SymReport sym_checked(const Graph& g, Params params, VertexSet a1, VertexSet b);

struct CanoniseStep {
    int a_index = 0;
    VertexSet b;
    bool triangle_free = false;
    bool alpha_ok = false;
    bool edges_preserved = false;
};

struct CanoniseResult {
    Graph graph;
    Mould mould;
    std::vector<CanoniseStep> trace;
};

/// Converts an Andrasfai-pattern imprint into a mould by one symmetrization
/// per pattern vertex, re-verifying the loop invariants after every step.
/// `a_sets[i]` is the fortress member assigned to residue i of the pattern.
/// Aborts (std::runtime_error mentioning the step) on any invariant failure.
CanoniseResult imprint_to_mould(const Graph& g, Params params, int k,
                                const std::vector<VertexSet>& a_sets);

} // namespace rt
