#include "rt/fortress.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "rt/canonical.hpp"
#include "rt/constructions.hpp"
#include "rt/independence.hpp"

namespace rt {

std::size_t Fortress::degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::uint64_t w : adj[i]) d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

Fortress build_fortress(const Graph& g, int s, std::size_t cap) {
    if (alpha(g).alpha != s)
        throw std::invalid_argument("build_fortress: s is not the independence number");
    EnumerateResult enumd = enumerate_independent_sets(g, s, cap);
    if (enumd.truncated)
        throw std::runtime_error("build_fortress: enumeration cap exceeded");

    Fortress f;
    f.params = Params{g.order(), s};
    f.members = std::move(enumd.sets);
    const std::size_t m = f.members.size();
    const std::size_t words = (m + 63) / 64;
    f.adj.assign(m, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (!f.members[i].intersects(f.members[j])) {
                f.adj[i][j >> 6] |= std::uint64_t{1} << (j & 63);
                f.adj[j][i >> 6] |= std::uint64_t{1} << (i & 63);
            }
    return f;
}

FortressChecks fortress_checks(const Fortress& f) {
    FortressChecks out;
    const std::size_t m = f.size();

    out.triangle_free = true;
    for (std::size_t i = 0; i < m && out.triangle_free; ++i)
        for (std::size_t j = i + 1; j < m && out.triangle_free; ++j) {
            if (!f.adjacent(i, j)) continue;
            for (std::size_t w = 0; w < f.adj[i].size(); ++w)
                if (f.adj[i][w] & f.adj[j][w]) {
                    out.triangle_free = false;
                    break;
                }
        }

    std::vector<int> color(m, -1);
    bool two_colorable = true;
    for (std::size_t start = 0; start < m && two_colorable; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::deque<std::size_t> queue{start};
        while (!queue.empty() && two_colorable) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t u = 0; u < m; ++u) {
                if (!f.adjacent(v, u)) continue;
                if (color[u] == -1) {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if (color[u] == color[v]) {
                    two_colorable = false;
                    break;
                }
            }
        }
    }
    if (two_colorable) out.bipartition = std::move(color);
    return out;
}

namespace {

// Backtracking induced-subgraph embedding: pattern vertices are placed in
// index order, candidates ascending, with degree-compatibility pruning.
// `usable` restricts the members the images may come from.
struct ImprintSearch {
    const Fortress& f;
    const Graph& pattern;
    const std::vector<char>& usable;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::vector<int> assign;
    std::vector<char> taken;
    std::optional<std::vector<int>> found;

    ImprintSearch(const Fortress& fort, const Graph& pat, const std::vector<char>& use,
                  std::uint64_t node_budget)
        : f(fort), pattern(pat), usable(use), budget(node_budget),
          assign(static_cast<std::size_t>(pat.order()), -1), taken(fort.size(), 0) {}

    bool compatible(int x, std::size_t candidate) const {
        for (int y = 0; y < pattern.order(); ++y) {
            if (assign[static_cast<std::size_t>(y)] < 0) continue;
            const auto img = static_cast<std::size_t>(assign[static_cast<std::size_t>(y)]);
            if (pattern.adjacent(x, y) != f.adjacent(candidate, img)) return false;
        }
        return true;
    }

    void run(int x) {
        if (found || exhausted) return;
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (x == pattern.order()) {
            found = assign;
            return;
        }
        const std::size_t pat_deg = static_cast<std::size_t>(pattern.degree(x));
        for (std::size_t c = 0; c < f.size(); ++c) {
            if (taken[c] || !usable[c]) continue;
            if (f.degree(c) < pat_deg) continue;
            if (!compatible(x, c)) continue;
            assign[static_cast<std::size_t>(x)] = static_cast<int>(c);
            taken[c] = 1;
            run(x + 1);
            taken[c] = 0;
            assign[static_cast<std::size_t>(x)] = -1;
            if (found || exhausted) return;
        }
    }
};

} // namespace

std::optional<Imprint> find_imprint(const Fortress& f, const Graph& pattern) {
    if (pattern.order() > static_cast<int>(f.size())) return std::nullopt;
    const std::vector<char> usable(f.size(), 1);
    ImprintSearch search(f, pattern, usable, ~std::uint64_t{0});
    search.run(0);
    if (!search.found) return std::nullopt;
    return Imprint{pattern, *search.found};
}

MouldSearch find_mould(const Graph& g, Params params, const Graph& pattern,
                       std::uint64_t node_budget) {
    if (params.n != g.order())
        throw std::invalid_argument("find_mould: params do not match the graph");
    if (3 * params.s <= params.n)
        throw std::invalid_argument("find_mould: requires s > n/3");
    const int psi_size = params.surplus();

    const Fortress f = build_fortress(g, params.s);

    // pool(X) = vertices whose neighborhood is exactly X, grouped in one pass
    std::unordered_map<std::uint64_t, VertexSet> by_row;
    for (int v = 0; v < g.order(); ++v) by_row[g.row(v)] = by_row[g.row(v)].with(v);

    std::vector<VertexSet> pool(f.size());
    std::vector<char> rich(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (auto it = by_row.find(f.members[i].bits); it != by_row.end())
            pool[i] = it->second;
        rich[i] = pool[i].count() >= psi_size;
    }

    MouldSearch out;
    ImprintSearch search(f, pattern, rich, node_budget);
    search.run(0);
    out.nodes = search.nodes;
    out.budget_exhausted = search.exhausted;
    if (!search.found) return out;

    Mould m{pattern, *search.found, {}, {}};
    for (int idx : m.member_index) {
        const auto i = static_cast<std::size_t>(idx);
        m.phi.push_back(f.members[i]);
        VertexSet psi;
        for (int v : pool[i]) {
            if (psi.count() == psi_size) break;
            psi = psi.with(v);
        }
        m.psi.push_back(psi);
    }
    out.mould = std::move(m);
    return out;
}

namespace {

bool mould_structurally_valid(const Graph& g, Params params, const Mould& m) {
    const int h = m.pattern.order();
    if (static_cast<int>(m.phi.size()) != h || static_cast<int>(m.psi.size()) != h)
        return false;
    for (int x = 0; x < h; ++x) {
        const auto xi = static_cast<std::size_t>(x);
        if (m.phi[xi].count() != params.s) return false;
        if (!is_independent(g, m.phi[xi])) return false;
        if (m.psi[xi].count() != params.surplus()) return false;
        if (!is_independent(g, m.psi[xi])) return false;
        for (int z : m.psi[xi])
            if (g.row(z) != m.phi[xi].bits) return false;
        for (int y = 0; y < x; ++y) {
            const auto yi = static_cast<std::size_t>(y);
            if (m.phi[xi] == m.phi[yi]) return false; // injectivity
            const bool pattern_edge = m.pattern.adjacent(x, y);
            const bool disjoint = !m.phi[xi].intersects(m.phi[yi]);
            if (pattern_edge != disjoint) return false; // the imprint biconditional
        }
    }
    return true;
}

} // namespace

MouldReport check_mould(const Graph& g, Params params, const Mould& m) {
    MouldReport rep;
    const int h = m.pattern.order();
    rep.structurally_valid = mould_structurally_valid(g, params, m);

    // (a) pairwise psi disjointness
    rep.psi_disjoint = true;
    for (int x = 0; x < h; ++x)
        for (int y = x + 1; y < h; ++y)
            if (m.psi[static_cast<std::size_t>(x)].intersects(m.psi[static_cast<std::size_t>(y)]))
                rep.psi_disjoint = false;

    // (b) for every member X: psi(y) subset of X <=> psi(y) meets X <=> phi(y) avoids X
    const Fortress f = build_fortress(g, params.s);
    rep.member_equivalences = true;
    for (const VertexSet& x : f.members)
        for (int y = 0; y < h; ++y) {
            const auto yi = static_cast<std::size_t>(y);
            const bool sub = m.psi[yi].subset_of(x);
            const bool meets = m.psi[yi].intersects(x);
            const bool avoids = !m.phi[yi].intersects(x);
            if (sub != meets || meets != avoids) rep.member_equivalences = false;
        }

    // (c) the union of the psi classes induces exactly the pattern blow-up
    rep.union_induces_blowup = true;
    for (int x = 0; x < h && rep.union_induces_blowup; ++x) {
        const auto xi = static_cast<std::size_t>(x);
        if (!is_independent(g, m.psi[xi])) rep.union_induces_blowup = false;
        for (int y = x + 1; y < h; ++y) {
            const auto yi = static_cast<std::size_t>(y);
            long long cross = 0;
            for (int v : m.psi[xi]) cross += (g.neighbors(v) & m.psi[yi]).count();
            const long long full =
                static_cast<long long>(m.psi[xi].count()) * m.psi[yi].count();
            if (m.pattern.adjacent(x, y) ? cross != full : cross != 0)
                rep.union_induces_blowup = false;
        }
    }

    const bool band = 11 * params.s > 4 * params.n;

    // images located by value so detached moulds are handled the same way
    const auto resolve_images = [&]() -> std::vector<std::size_t> {
        std::vector<std::size_t> img;
        for (int x = 0; x < h; ++x) {
            const auto it = std::find(f.members.begin(), f.members.end(),
                                      m.phi[static_cast<std::size_t>(x)]);
            if (it == f.members.end()) return {};
            img.push_back(static_cast<std::size_t>(it - f.members.begin()));
        }
        return img;
    };
    const std::vector<std::size_t> img = resolve_images();

    // (d) every fortress edge has a fortress edge into every triple of images
    rep.edge_domination_applicable = band && h >= 3;
    if (rep.edge_domination_applicable) {
        rep.edge_domination = static_cast<int>(img.size()) == h;
        if (rep.edge_domination)
            for (std::size_t a = 0; a < f.size() && rep.edge_domination; ++a)
                for (std::size_t b = a + 1; b < f.size() && rep.edge_domination; ++b) {
                    if (!f.adjacent(a, b)) continue;
                    for (int i = 0; i < h && rep.edge_domination; ++i)
                        for (int j = i + 1; j < h && rep.edge_domination; ++j)
                            for (int k = j + 1; k < h; ++k) {
                                const bool hit =
                                    f.adjacent(a, img[static_cast<std::size_t>(i)]) ||
                                    f.adjacent(a, img[static_cast<std::size_t>(j)]) ||
                                    f.adjacent(a, img[static_cast<std::size_t>(k)]) ||
                                    f.adjacent(b, img[static_cast<std::size_t>(i)]) ||
                                    f.adjacent(b, img[static_cast<std::size_t>(j)]) ||
                                    f.adjacent(b, img[static_cast<std::size_t>(k)]);
                                if (!hit) {
                                    rep.edge_domination = false;
                                    break;
                                }
                            }
                }
    }

    // (e) each induced claw's images dominate the whole fortress
    std::vector<std::array<int, 4>> claws;
    for (int c = 0; c < h; ++c)
        for (int u = 0; u < h; ++u)
            for (int v = u + 1; v < h; ++v)
                for (int w = v + 1; w < h; ++w) {
                    if (c == u || c == v || c == w) continue;
                    if (m.pattern.adjacent(c, u) && m.pattern.adjacent(c, v) &&
                        m.pattern.adjacent(c, w) && !m.pattern.adjacent(u, v) &&
                        !m.pattern.adjacent(u, w) && !m.pattern.adjacent(v, w))
                        claws.push_back({c, u, v, w});
                }
    rep.claw_domination_applicable = band && !claws.empty();
    if (rep.claw_domination_applicable) {
        rep.claw_domination = static_cast<int>(img.size()) == h;
        if (rep.claw_domination)
            for (const auto& claw : claws) {
                for (std::size_t z = 0; z < f.size(); ++z) {
                    bool dominated = false;
                    for (int part : claw)
                        if (f.adjacent(z, img[static_cast<std::size_t>(part)])) {
                            dominated = true;
                            break;
                        }
                    if (!dominated) {
                        rep.claw_domination = false;
                        break;
                    }
                }
                if (!rep.claw_domination) break;
            }
    }
    return rep;
}

MouldStats mould_stats(const Graph& g, Params params, const Mould& m) {
    if (m.pattern.order() != 8 || !isomorphic(m.pattern, andrasfai(3)))
        throw std::invalid_argument("mould_stats: pattern must be the Wagner graph");
    if (!(4 * params.n < 11 * params.s && 8 * params.s < 3 * params.n))
        throw std::invalid_argument("mould_stats: requires 4n/11 < s < 3n/8");
    if (alpha(g).alpha != params.s)
        throw std::invalid_argument("mould_stats: s is not the independence number");

    VertexSet w;
    for (const VertexSet& psi : m.psi) w = w | psi;
    const VertexSet wbar = g.vertices() - w;

    MouldStats st;
    for (int v : w) {
        st.e_within += (g.neighbors(v) & w).count();
        st.e_cross += (g.neighbors(v) & wbar).count();
    }
    st.e_within /= 2;
    for (int v : wbar) st.e_outside += (g.neighbors(v) & wbar).count();
    st.e_outside /= 2;

    for (int v : wbar) {
        const VertexSet nw = g.neighbors(v) & w;
        int classes = 0;
        VertexSet covered;
        for (const VertexSet& psi : m.psi)
            if (psi.subset_of(nw)) {
                ++classes;
                covered = covered | psi;
            }
        if (classes == 3 && covered == nw) ++st.heavy_count;
    }
    st.bound_ok = g.edge_count() <= g_formula(4, params.n, params.s);
    return st;
}

} // namespace rt
