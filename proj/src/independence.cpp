#include "rt/independence.hpp"

#include <algorithm>
#include <stdexcept>

namespace rt {

bool is_independent(const Graph& g, VertexSet s) {
    if (!s.subset_of(g.vertices()))
        throw std::invalid_argument("is_independent: set not within vertex range");
    for (int v : s)
        if (g.row(v) & s.bits) return false;
    return true;
}

namespace {

// Greedy clique cover of the candidate set: an independent set meets each
// clique at most once, so the number of cliques bounds alpha from above.
int clique_cover_bound(const std::uint64_t* rows, std::uint64_t p) {
    int cliques = 0;
    while (p) {
        const int v = std::countr_zero(p);
        std::uint64_t clique = std::uint64_t{1} << v;
        std::uint64_t cand = p & rows[v];
        while (cand) {
            const int u = std::countr_zero(cand);
            clique |= std::uint64_t{1} << u;
            cand &= rows[u];
        }
        p &= ~clique;
        ++cliques;
    }
    return cliques;
}

int pick_branch_vertex(const std::uint64_t* rows, std::uint64_t p) {
    int best = -1, best_deg = -1;
    for (int v : VertexSet{p}) {
        const int d = std::popcount(rows[v] & p);
        if (d > best_deg) {
            best_deg = d;
            best = v;
        }
    }
    return best;
}

struct AlphaSearch {
    const std::uint64_t* rows;
    int best = 0;
    std::uint64_t best_mask = 0;
    std::uint64_t nodes = 0;
    int stop; // early exit once best >= stop

    AlphaSearch(const std::uint64_t* adj, int stop_at) : rows(adj), stop(stop_at) {}

    void run(std::uint64_t p, std::uint64_t chosen, int size) {
        ++nodes;
        if (size > best) {
            best = size;
            best_mask = chosen;
        }
        if (best >= stop || p == 0) return;
        if (size + clique_cover_bound(rows, p) <= best) return;
        const int v = pick_branch_vertex(rows, p);
        const std::uint64_t bit = std::uint64_t{1} << v;
        run(p & ~rows[v] & ~bit, chosen | bit, size + 1);
        if (best >= stop) return;
        run(p & ~bit, chosen, size);
    }
};

std::vector<std::uint64_t> copy_rows(const Graph& g) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) rows[static_cast<std::size_t>(v)] = g.row(v);
    return rows;
}

} // namespace

AlphaResult alpha(const Graph& g) {
    if (g.order() == 0) return {0, VertexSet{}, 1};
    const auto rows = copy_rows(g);
    AlphaSearch search(rows.data(), g.order() + 1);
    search.run(g.vertices().bits, 0, 0);
    return {search.best, VertexSet{search.best_mask}, search.nodes};
}

bool has_independent_set(const std::uint64_t* rows, std::uint64_t within, int k) {
    if (k <= 0) return true;
    if (std::popcount(within) < k) return false;
    AlphaSearch search(rows, k);
    search.run(within, 0, 0);
    return search.best >= k;
}

bool has_independent_set(const Graph& g, VertexSet within, int k) {
    if (k <= 0) return true;
    if (g.order() == 0) return false;
    const auto rows = copy_rows(g);
    return has_independent_set(rows.data(), within.bits, k);
}

namespace {

struct EnumerateSearch {
    const std::uint64_t* rows;
    int target;
    std::size_t cap;
    std::vector<VertexSet> out;
    bool truncated = false;
    std::uint64_t nodes = 0;

    void run(std::uint64_t p, std::uint64_t chosen, int size) {
        if (truncated) return;
        ++nodes;
        if (size == target) {
            if (out.size() == cap) {
                truncated = true;
                return;
            }
            out.push_back(VertexSet{chosen});
            return;
        }
        if (size + std::popcount(p) < target) return;
        if (size + clique_cover_bound(rows, p) < target) return;
        const int v = pick_branch_vertex(rows, p);
        const std::uint64_t bit = std::uint64_t{1} << v;
        run(p & ~rows[v] & ~bit, chosen | bit, size + 1);
        run(p & ~bit, chosen, size);
    }
};

} // namespace

EnumerateResult enumerate_independent_sets(const Graph& g, int target, std::size_t cap) {
    if (cap == 0)
        throw std::invalid_argument("enumerate_independent_sets: cap must be positive");
    if (target < 0)
        throw std::invalid_argument("enumerate_independent_sets: negative target");
    if (target == 0) return {{VertexSet{}}, false, 1};
    if (g.order() == 0) return {{}, false, 1};
    const auto rows = copy_rows(g);
    EnumerateSearch search{rows.data(), target, cap, {}, false, 0};
    search.run(g.vertices().bits, 0, 0);
    std::sort(search.out.begin(), search.out.end());
    return {std::move(search.out), search.truncated, search.nodes};
}

} // namespace rt
