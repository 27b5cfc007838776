#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rt/graph.hpp"

namespace rt {

struct ExOptions {
    std::size_t witness_cap = 64;
    std::uint64_t node_budget = 1'000'000'000;
    int threads = 1;
};

struct ExResult {
    /// absent = infeasible: no triangle-free graph with alpha <= s exists
    std::optional<long long> value;
    bool exact = true; // false when the node budget ran out
    std::vector<Graph> witnesses; // canonically labeled, deduplicated, sorted
    bool witnesses_truncated = false;
    std::uint64_t nodes = 0;
    double millis = 0.0;
};

/// Exact maximum edge count over triangle-free graphs on n vertices with
/// independence number at most s. Branch-and-bound over per-vertex
/// neighborhood choices (edge decisions in a fixed colex pair order), with
/// blow-up seeding, degree/Mantel/band-cap pruning, incremental bounded
/// independence checks and canonical-form rejection of isomorphic prefixes.
ExResult ex_exact(int n, int s, const ExOptions& opts = {});

struct SweepRow {
    int n = 0;
    int s = 0;
    std::optional<long long> ex;
    bool exact = true;
    std::string formula;              // "mantel", "g2", "g3", "g4" or empty
    std::optional<long long> formula_value;
    std::optional<bool> match;        // present when a closed form applies
    long long trivial_bound = 0;
    std::optional<long long> g_cap;
    bool cap_ok = true;               // ex <= g_cap whenever both exist
    std::size_t witness_count = 0;
    std::uint64_t nodes = 0;
    double millis = 0.0;
};

/// One row per s in 0..n: the exact value next to the applicable closed form.
std::vector<SweepRow> verify_formulas(int n, const ExOptions& opts = {});

struct ExtremalReport {
    std::size_t fortress_size = 0;
    int low_degree_count = 0;          // q = #{x : deg(x) <= 4n-10s}
    bool low_degree_applicable = false; // needs 4n/11 < s < 3n/8
    bool low_degree_ok = false;         // q < 3s-n
    bool fortress_edge_applicable = false; // needs n >= 2s
    bool fortress_edge = false;
    bool fortress_tf_applicable = false;   // needs s > n/3
    bool fortress_triangle_free = false;
    bool fortress_bipartite = false;       // empirical probe
    bool pentagon_imprint = false;         // empirical probe
};

/// Structural census of a (presumed extremal) triangle-free graph with
/// alpha(G) = s.
ExtremalReport extremal_properties(const Graph& g, Params params);

} // namespace rt
