#include "rt/symmetrize.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "rt/constructions.hpp"
#include "rt/independence.hpp"

namespace rt {

Graph sym(const Graph& g, VertexSet a, VertexSet b) {
    if (a.intersects(b))
        throw std::invalid_argument("sym: A and B overlap");
    if (!a.subset_of(g.vertices()) || !b.subset_of(g.vertices()))
        throw std::invalid_argument("sym: set not within vertex range");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) {
        std::uint64_t row = g.row(v) & ~b.bits; // edges meeting B vanish
        if (b.contains(v)) row = a.bits;
        else if (a.contains(v)) row |= b.bits;
        rows[static_cast<std::size_t>(v)] = row;
    }
    return Graph::from_rows(std::move(rows));
}

namespace {

constexpr long long kMinusInf = std::numeric_limits<long long>::min() / 4;

// Successive max-gain augmenting paths. The matching stays bonus-optimal at
// every cardinality, so the final one is maximum in size and, among those,
// covers the most preferred vertices. Gains are found by Bellman-Ford; the
// optimality invariant rules out positive cycles.
struct MatchingSolver {
    std::vector<int> us, ws;            // vertex ids per side
    std::vector<std::vector<char>> adj; // us x ws
    std::vector<long long> bonus_u, bonus_w;
    std::vector<int> match_u, match_w;  // indices into the other side, -1 free

    void augment_all() {
        const int p = static_cast<int>(us.size());
        const int q = static_cast<int>(ws.size());
        match_u.assign(static_cast<std::size_t>(p), -1);
        match_w.assign(static_cast<std::size_t>(q), -1);
        for (;;) {
            // dist over nodes: 0..p-1 U-side, p..p+q-1 W-side
            std::vector<long long> dist(static_cast<std::size_t>(p + q), kMinusInf);
            std::vector<int> parent(static_cast<std::size_t>(p + q), -1);
            for (int i = 0; i < p; ++i)
                if (match_u[static_cast<std::size_t>(i)] < 0) dist[static_cast<std::size_t>(i)] = 0;
            for (int round = 0; round < p + q + 1; ++round) {
                bool changed = false;
                for (int i = 0; i < p; ++i) {
                    if (dist[static_cast<std::size_t>(i)] == kMinusInf) continue;
                    for (int j = 0; j < q; ++j) {
                        if (!adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
                        if (match_u[static_cast<std::size_t>(i)] == j) continue;
                        const long long cand = dist[static_cast<std::size_t>(i)] +
                                               bonus_u[static_cast<std::size_t>(i)] +
                                               bonus_w[static_cast<std::size_t>(j)];
                        if (cand > dist[static_cast<std::size_t>(p + j)]) {
                            dist[static_cast<std::size_t>(p + j)] = cand;
                            parent[static_cast<std::size_t>(p + j)] = i;
                            changed = true;
                        }
                    }
                }
                for (int j = 0; j < q; ++j) {
                    const int i = match_w[static_cast<std::size_t>(j)];
                    if (i < 0 || dist[static_cast<std::size_t>(p + j)] == kMinusInf) continue;
                    const long long cand = dist[static_cast<std::size_t>(p + j)] -
                                           bonus_u[static_cast<std::size_t>(i)] -
                                           bonus_w[static_cast<std::size_t>(j)];
                    if (cand > dist[static_cast<std::size_t>(i)]) {
                        dist[static_cast<std::size_t>(i)] = cand;
                        parent[static_cast<std::size_t>(i)] = p + j;
                        changed = true;
                    }
                }
                if (!changed) break;
            }
            int target = -1;
            long long best = kMinusInf;
            for (int j = 0; j < q; ++j)
                if (match_w[static_cast<std::size_t>(j)] < 0 &&
                    dist[static_cast<std::size_t>(p + j)] > best) {
                    best = dist[static_cast<std::size_t>(p + j)];
                    target = j;
                }
            if (target < 0) return; // maximum cardinality reached
            // flip the alternating path back to a free U vertex
            int node = p + target;
            while (node >= 0) {
                const int i = parent[static_cast<std::size_t>(node)];
                const int j = node - p;
                const int prev = parent[static_cast<std::size_t>(i)]; // W node or -1
                match_u[static_cast<std::size_t>(i)] = j;
                match_w[static_cast<std::size_t>(j)] = i;
                node = prev;
            }
        }
    }
};

} // namespace

Matching max_matching(const Graph& g, VertexSet u, VertexSet w, VertexSet prefer) {
    if (u.intersects(w))
        throw std::invalid_argument("max_matching: sides overlap");
    if (!u.subset_of(g.vertices()) || !w.subset_of(g.vertices()))
        throw std::invalid_argument("max_matching: set not within vertex range");

    MatchingSolver solver;
    for (int v : u) solver.us.push_back(v);
    for (int v : w) solver.ws.push_back(v);
    solver.adj.assign(solver.us.size(), std::vector<char>(solver.ws.size(), 0));
    for (std::size_t i = 0; i < solver.us.size(); ++i)
        for (std::size_t j = 0; j < solver.ws.size(); ++j)
            solver.adj[i][j] = g.adjacent(solver.us[i], solver.ws[j]);
    for (int v : solver.us) solver.bonus_u.push_back(prefer.contains(v) ? 1 : 0);
    for (int v : solver.ws) solver.bonus_w.push_back(prefer.contains(v) ? 1 : 0);
    solver.augment_all();

    Matching out;
    for (std::size_t i = 0; i < solver.us.size(); ++i) {
        const int j = solver.match_u[i];
        if (j < 0) continue;
        out.pairs.emplace_back(solver.us[i], solver.ws[static_cast<std::size_t>(j)]);
        out.covered = out.covered.with(solver.us[i]).with(solver.ws[static_cast<std::size_t>(j)]);
    }
    return out;
}

VertexSet select_B(const Graph& g, VertexSet a1, VertexSet a2, int size,
                   VertexSet prefer, VertexSet must_include) {
    if (a1.intersects(a2))
        throw std::invalid_argument("select_B: A1 and A2 overlap");
    if (!is_independent(g, a1) || !is_independent(g, a2))
        throw std::invalid_argument("select_B: A1 and A2 must be independent");
    if (size < 0 || size > a2.count())
        throw std::invalid_argument("select_B: bad size request");

    const VertexSet rest = g.vertices() - a1 - a2;
    const Matching m = max_matching(g, rest, a2, prefer);
    const VertexSet avail = a2 - m.covered;
    if (!must_include.subset_of(avail))
        throw std::invalid_argument("select_B: must-include vertices are matched or outside A2");
    if (avail.count() < size)
        throw std::invalid_argument(
            "select_B: only " + std::to_string(avail.count()) + " unmatched vertices for a request of " +
            std::to_string(size) + " (violated precondition)");
    VertexSet b = must_include;
    for (int v : avail - must_include) {
        if (b.count() >= size) break;
        b = b.with(v);
    }
    if (b.count() != size)
        throw std::invalid_argument("select_B: must-include larger than requested size");
    return b;
}

SymReport sym_checked(const Graph& g, Params params, VertexSet a1, VertexSet b) {
    SymReport rep{sym(g, a1, b)};
    rep.triangle_free = rep.result.is_triangle_free();
    rep.alpha_ok = !has_independent_set(rep.result, rep.result.vertices(), params.s + 1);
    rep.edges_preserved = rep.result.edge_count() == g.edge_count();
    return rep;
}

namespace {

void require(bool ok, int step, const std::string& what) {
    if (!ok)
        throw std::runtime_error("imprint_to_mould: step " + std::to_string(step) + ": " + what);
}

// Loop invariants of the stepwise construction: the imprint biconditional on
// the A sets, independence of every A, psi containment checked through the
// subset/meet/avoid equivalences, and the complete joins K(A_m, B_m).
void verify_invariants(const Graph& g, const Graph& pattern, int step,
                       const std::vector<VertexSet>& a_sets,
                       const std::vector<VertexSet>& b_sets,
                       const std::vector<char>& b_done) {
    const int verts = pattern.order();
    for (int i = 0; i < verts; ++i)
        require(is_independent(g, a_sets[static_cast<std::size_t>(i)]), step,
                "A set " + std::to_string(i) + " no longer independent");
    for (int m = 0; m < verts; ++m) {
        if (!b_done[static_cast<std::size_t>(m)]) continue;
        const VertexSet bm = b_sets[static_cast<std::size_t>(m)];
        require(is_independent(g, bm), step, "B set " + std::to_string(m) + " not independent");
        require(g.is_fully_joined(a_sets[static_cast<std::size_t>(m)], bm), step,
                "K(A,B) missing for " + std::to_string(m));
        for (int j = 0; j < verts; ++j) {
            if (j == m) continue;
            const VertexSet aj = a_sets[static_cast<std::size_t>(j)];
            const bool sub = bm.subset_of(aj);
            const bool meets = bm.intersects(aj);
            const bool avoids = !a_sets[static_cast<std::size_t>(m)].intersects(aj);
            require(sub == meets && meets == avoids, step,
                    "subset/meet/avoid equivalence fails for B" + std::to_string(m) + ", A" +
                        std::to_string(j));
            if (pattern.adjacent(m, j))
                require(sub, step, "B" + std::to_string(m) + " escapes A" + std::to_string(j));
        }
    }
}

} // namespace

CanoniseResult imprint_to_mould(const Graph& g, Params params, int k,
                                const std::vector<VertexSet>& a_sets) {
    if (k < 1)
        throw std::invalid_argument("imprint_to_mould: k must be at least 1");
    const Graph pattern = andrasfai(k);
    const int verts = pattern.order();
    if (static_cast<int>(a_sets.size()) != verts)
        throw std::invalid_argument("imprint_to_mould: need one A set per pattern vertex");
    if (!(3 * params.s > params.n && 2 * params.s <= params.n))
        throw std::invalid_argument("imprint_to_mould: requires n/3 < s <= n/2");
    if (alpha(g).alpha != params.s)
        throw std::invalid_argument("imprint_to_mould: s is not the independence number");
    for (int i = 0; i < verts; ++i) {
        if (a_sets[static_cast<std::size_t>(i)].count() != params.s ||
            !is_independent(g, a_sets[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("imprint_to_mould: A sets must be independent s-sets");
        for (int j = i + 1; j < verts; ++j) {
            const bool disjoint =
                !a_sets[static_cast<std::size_t>(i)].intersects(a_sets[static_cast<std::size_t>(j)]);
            if (disjoint != pattern.adjacent(i, j))
                throw std::invalid_argument("imprint_to_mould: A sets are not an imprint");
        }
    }

    CanoniseResult out;
    out.graph = g;
    std::vector<VertexSet> b_sets(static_cast<std::size_t>(verts));
    std::vector<char> b_done(static_cast<std::size_t>(verts), 0);

    // processes residues 1, 2, ..., 3k-2, 0, matching the stepwise order of
    // the nice-number construction
    for (int step = 1; step <= verts; ++step) {
        const int a = step % verts;
        const int partner = (a + k) % verts;
        const VertexSet b = select_B(out.graph, a_sets[static_cast<std::size_t>(a)],
                                     a_sets[static_cast<std::size_t>(partner)], params.surplus());
        const SymReport rep =
            sym_checked(out.graph, params, a_sets[static_cast<std::size_t>(a)], b);
        out.trace.push_back(
            {a, b, rep.triangle_free, rep.alpha_ok, rep.edges_preserved});
        require(rep.triangle_free, step, "symmetrization created a triangle");
        require(rep.alpha_ok, step, "independence number exceeded s");
        require(rep.edges_preserved, step, "edge count changed");
        out.graph = rep.result;
        b_sets[static_cast<std::size_t>(a)] = b;
        b_done[static_cast<std::size_t>(a)] = 1;
        verify_invariants(out.graph, pattern, step, a_sets, b_sets, b_done);
    }

    out.mould = Mould{pattern, std::vector<int>(static_cast<std::size_t>(verts), -1), a_sets,
                      std::move(b_sets)};
    return out;
}

} // namespace rt
