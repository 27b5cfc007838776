#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rt/graph.hpp"

namespace rt {

/// All maximum independent sets of a graph, adjacent when disjoint. Member
/// order is ascending by bitmask; adjacency rows are bit rows over member
/// indices (the member count may exceed 64, so rows are word vectors).
struct Fortress {
    Params params;
    std::vector<VertexSet> members;
    std::vector<std::vector<std::uint64_t>> adj;

    std::size_t size() const { return members.size(); }
    bool adjacent(std::size_t i, std::size_t j) const {
        return (adj[i][j >> 6] >> (j & 63)) & 1u;
    }
    std::size_t degree(std::size_t i) const;
};

/// Requires s = alpha(G); refuses otherwise. Throws when the enumeration cap
/// is exceeded.
Fortress build_fortress(const Graph& g, int s, std::size_t cap = 100000);

struct FortressChecks {
    bool triangle_free = false;
    std::optional<std::vector<int>> bipartition; // 0/1 color per member
};

FortressChecks fortress_checks(const Fortress& f);

/// Induced embedding of a pattern graph into the fortress: pattern edges map
/// to member disjointness and pattern non-edges to intersection.
struct Imprint {
    Graph pattern;
    std::vector<int> map; // pattern vertex -> member index
};

std::optional<Imprint> find_imprint(const Fortress& f, const Graph& pattern);

/// An imprint phi together with psi classes: psi(x) is an independent set of
/// size 3s-n whose every vertex has neighborhood exactly phi(x).
struct Mould {
    Graph pattern;
    std::vector<int> member_index;  // -1 when detached from a fortress
    std::vector<VertexSet> phi;
    std::vector<VertexSet> psi;
};

struct MouldSearch {
    std::optional<Mould> mould;
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
};

/// Searches imprints whose every image has at least 3s-n vertices with that
/// exact neighborhood; psi takes the lowest-index such vertices. Absence is
/// certified only when the search exhausts within budget.
MouldSearch find_mould(const Graph& g, Params params, const Graph& pattern,
                       std::uint64_t node_budget = 50'000'000);

struct MouldReport {
    bool psi_disjoint = false;                  // (a)
    bool member_equivalences = false;           // (b) subset/meet/avoid equivalence
    bool union_induces_blowup = false;          // (c)
    bool edge_domination_applicable = false;    // (d) needs s > 4n/11
    bool edge_domination = false;
    bool claw_domination_applicable = false;    // (e) needs s > 4n/11 and a claw in H
    bool claw_domination = false;
    bool structurally_valid = false;            // sizes, independence, exact neighborhoods
    bool all_ok() const {
        return structurally_valid && psi_disjoint && member_equivalences &&
               union_induces_blowup && (!edge_domination_applicable || edge_domination) &&
               (!claw_domination_applicable || claw_domination);
    }
};

MouldReport check_mould(const Graph& g, Params params, const Mould& m);

/// Edge-count decomposition around the union W of the psi classes of a
/// Wagner-pattern mould, plus the heavy-vertex census.
struct MouldStats {
    long long e_within = 0;   // edges inside W
    long long e_cross = 0;    // edges between W and its complement
    long long e_outside = 0;  // edges inside the complement
    int heavy_count = 0;      // outside vertices whose W-neighborhood is exactly 3 classes
    bool bound_ok = false;    // e(G) <= g_4(n,s)
};

MouldStats mould_stats(const Graph& g, Params params, const Mould& m);

} // namespace rt
