#include "rt/canonical.hpp"

#include <algorithm>

namespace rt {

std::uint64_t CanonicalForm::hash() const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n);
    for (std::uint64_t w : cols) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

using Cells = std::vector<std::uint64_t>; // ordered partition, one mask per cell

// Split every cell by the vector of neighbor counts into the current cells;
// subcells are ordered by descending signature. Iterates to a fixpoint. The
// result depends only on the unlabeled structure, never on vertex names.
void refine(const Graph& g, Cells& cells) {
    const int n = g.order();
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const std::uint64_t cell = cells[ci];
            if (std::popcount(cell) <= 1) continue;
            for (int v : VertexSet{cell}) {
                auto& s = sig[static_cast<std::size_t>(v)];
                s.clear();
                for (std::uint64_t other : cells)
                    s.push_back(std::popcount(g.row(v) & other));
            }
            std::vector<int> order;
            for (int v : VertexSet{cell}) order.push_back(v);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return sig[static_cast<std::size_t>(a)] > sig[static_cast<std::size_t>(b)];
            });
            Cells sub;
            for (int v : order) {
                if (!sub.empty()) {
                    const int prev = VertexSet{sub.back()}.lowest();
                    if (sig[static_cast<std::size_t>(prev)] == sig[static_cast<std::size_t>(v)]) {
                        sub.back() |= std::uint64_t{1} << v;
                        continue;
                    }
                }
                sub.push_back(std::uint64_t{1} << v);
            }
            if (sub.size() > 1) {
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(ci));
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(ci),
                             sub.begin(), sub.end());
                changed = true;
            }
        }
    }
}

struct CanonSearch {
    const Graph& g;
    int n;
    std::vector<std::uint64_t> best_cols;
    std::vector<int> best_perm;
    bool have_best = false;
    std::uint64_t generation = 0; // bumped whenever best is replaced

    explicit CanonSearch(const Graph& graph) : g(graph), n(graph.order()) {}

    // returns number of leading singleton cells
    static int placed_prefix(const Cells& cells) {
        int p = 0;
        for (std::uint64_t c : cells) {
            if (std::popcount(c) != 1) break;
            ++p;
        }
        return p;
    }

    // cols/perm carry the columns and placement for the first `done` vertices;
    // greater==true once this branch is strictly above the current best.
    void search(Cells cells, std::vector<std::uint64_t> cols, std::vector<int> perm,
                int done, bool greater) {
        const int p = placed_prefix(cells);
        for (int j = done; j < p; ++j) {
            const int v = VertexSet{cells[static_cast<std::size_t>(j)]}.lowest();
            perm.push_back(v);
            std::uint64_t col = 0;
            for (int i = 0; i < j; ++i)
                if (g.adjacent(perm[static_cast<std::size_t>(i)], v))
                    col |= std::uint64_t{1} << (j - 1 - i);
            cols.push_back(col);
            if (have_best && !greater) {
                const std::uint64_t ref = best_cols[static_cast<std::size_t>(j)];
                if (col < ref) return; // dominated, prune
                if (col > ref) greater = true;
            }
        }
        if (p == static_cast<int>(cells.size())) {
            if (!have_best || greater) {
                best_cols = cols;
                best_perm = perm;
                have_best = true;
                ++generation;
            }
            return;
        }
        const std::size_t target = static_cast<std::size_t>(p);
        std::vector<int> candidates;
        for (int v : VertexSet{cells[target]}) {
            bool twin = false;
            for (int u : candidates) {
                const std::uint64_t bu = std::uint64_t{1} << u;
                const std::uint64_t bv = std::uint64_t{1} << v;
                if ((g.row(u) & ~bv) == (g.row(v) & ~bu)) {
                    twin = true; // transposing u,v is an automorphism
                    break;
                }
            }
            if (!twin) candidates.push_back(v);
        }
        for (int v : candidates) {
            Cells next(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(target));
            next.push_back(std::uint64_t{1} << v);
            next.push_back(cells[target] & ~(std::uint64_t{1} << v));
            next.insert(next.end(), cells.begin() + static_cast<std::ptrdiff_t>(target) + 1,
                        cells.end());
            refine(g, next);
            const std::uint64_t before = generation;
            search(std::move(next), cols, perm, p, greater);
            // a new best extends this node's columns, so the branch is back to
            // comparing as an equal prefix
            if (generation != before) greater = false;
        }
    }
};

} // namespace

CanonicalForm canonical_form(const Graph& g) {
    const int n = g.order();
    if (n == 0) return {0, {}};
    Cells cells{VertexSet::full(n).bits};
    refine(g, cells);
    CanonSearch search(g);
    search.search(std::move(cells), {}, {}, 0, false);
    return {n, std::move(search.best_cols)};
}

Graph canonical_graph(const Graph& g) {
    const int n = g.order();
    if (n == 0) return g;
    Cells cells{VertexSet::full(n).bits};
    refine(g, cells);
    CanonSearch search(g);
    search.search(std::move(cells), {}, {}, 0, false);
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (g.adjacent(search.best_perm[static_cast<std::size_t>(i)],
                           search.best_perm[static_cast<std::size_t>(j)]))
                edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph graph_from_form(const CanonicalForm& form) {
    // cols[j] holds vertex j's adjacency towards 0..j-1, earlier vertices
    // more significant
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < form.n; ++j)
        for (int i = 0; i < j; ++i)
            if ((form.cols[static_cast<std::size_t>(j)] >> (j - 1 - i)) & 1u)
                edges.emplace_back(i, j);
    return Graph::from_edges(form.n, edges);
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace rt
