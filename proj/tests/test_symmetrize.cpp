#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rt/canonical.hpp"
#include "rt/constructions.hpp"
#include "rt/fortress.hpp"
#include "rt/independence.hpp"
#include "rt/symmetrize.hpp"

using namespace rt;

namespace {

Graph random_graph(int n, std::mt19937& rng, int denom = 3) {
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (static_cast<int>(rng() % denom) == 0) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

VertexSet random_subset(int n, std::mt19937& rng) {
    VertexSet s;
    for (int v = 0; v < n; ++v)
        if (rng() % 3 == 0) s = s.with(v);
    return s;
}

// exhaustive matching oracle for small sides
int naive_max_matching(const Graph& g, VertexSet u, VertexSet w) {
    std::vector<int> us, ws;
    for (int v : u) us.push_back(v);
    for (int v : w) ws.push_back(v);
    int best = 0;
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t used, int size) -> void {
        best = std::max(best, size);
        if (i == us.size()) return;
        self(self, i + 1, used, size);
        for (std::size_t j = 0; j < ws.size(); ++j) {
            if ((used >> j) & 1) continue;
            if (!g.adjacent(us[i], ws[j])) continue;
            self(self, i + 1, used | (std::uint64_t{1} << j), size + 1);
        }
    };
    rec(rec, 0, 0, 0);
    return best;
}

} // namespace

TEST_CASE("sym basics") {
    const Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    const Graph path = sym(k3, VertexSet::of({0}), VertexSet::of({1}));
    CHECK(path.edge_count() == 2);
    CHECK(path.adjacent(0, 1));
    CHECK(path.adjacent(0, 2));
    CHECK_FALSE(path.adjacent(1, 2));

    const Graph c5 = andrasfai(2);
    CHECK(sym(c5, VertexSet::of({0, 1}), VertexSet{}) == c5); // empty B is a no-op
    CHECK_THROWS_AS(sym(c5, VertexSet::of({0}), VertexSet::of({0})), std::invalid_argument);
}

TEST_CASE("sym is idempotent and recounts edges") {
    std::mt19937 rng(52);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 11);
        const Graph g = random_graph(n, rng);
        const VertexSet a = random_subset(n, rng);
        const VertexSet b = random_subset(n, rng) - a;
        const Graph once = sym(g, a, b);
        CHECK(sym(once, a, b) == once);

        // recount: edges not meeting B survive, plus the complete join
        long long expect = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                const bool meets_b = b.contains(i) || b.contains(j);
                const bool joined = (a.contains(i) && b.contains(j)) ||
                                    (a.contains(j) && b.contains(i));
                if ((g.adjacent(i, j) && !meets_b) || joined) ++expect;
            }
        CHECK(once.edge_count() == expect);
    }
}

TEST_CASE("sym canonises the perturbed (49,18) blow-up") {
    const BlowupGraph p = perturb_canonical(49, 18, 1);
    // A1 spans residues 9, 10, 0, 1; B is class 5 plus one vertex of class 4
    const VertexSet a1 = p.classes[9] | p.classes[10] | p.classes[0] | p.classes[1];
    VertexSet b = p.classes[5];
    b = b.with(p.classes[4].lowest());
    const Graph g2 = sym(p.graph, a1, b);
    CHECK(isomorphic(g2, canonical_blowup(49, 4, 18).graph));

    const SymReport rep = sym_checked(p.graph, Params{49, 18}, a1, b);
    CHECK(rep.triangle_free);
    CHECK(rep.alpha_ok);
    CHECK(rep.edges_preserved);
    CHECK(rep.all_ok());
}

TEST_CASE("sym_checked reports failures without throwing") {
    const Graph c5 = andrasfai(2);
    const SymReport noop = sym_checked(c5, Params{5, 2}, VertexSet::of({0, 1}), VertexSet{});
    CHECK(noop.all_ok());

    // joining both neighbors of 0 to it creates no triangle, but breaks the count
    const SymReport rep =
        sym_checked(c5, Params{5, 2}, VertexSet::of({2, 3}), VertexSet::of({0}));
    CHECK(rep.result.edge_count() == 5);
    CHECK(rep.all_ok()); // this one happens to stay extremal
    const SymReport bad = sym_checked(c5, Params{5, 2}, VertexSet::of({2}), VertexSet::of({0}));
    CHECK_FALSE(bad.edges_preserved);
}

TEST_CASE("max_matching basics") {
    const Graph none = Graph::empty(4);
    CHECK(max_matching(none, VertexSet::of({0, 1}), VertexSet::of({2, 3})).size() == 0);

    const BlowupGraph k33 = blowup({Graph::from_edges(2, {{0, 1}}), {3, 3}});
    const Matching full = max_matching(k33.graph, k33.classes[0], k33.classes[1]);
    CHECK(full.size() == 3);
    CHECK(full.covered.count() == 6);

    CHECK_THROWS_AS(max_matching(none, VertexSet::of({0}), VertexSet::of({0})),
                    std::invalid_argument);
}

TEST_CASE("max_matching preference steering") {
    // path u1 - w1 - u2 - w2: the unique maximum matching covers w1
    const Graph path = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    const Matching m = max_matching(path, VertexSet::of({0, 2}), VertexSet::of({1, 3}),
                                    VertexSet::of({1}));
    CHECK(m.size() == 2);
    CHECK(m.covered.contains(1));

    // a real choice: one U vertex adjacent to both W vertices
    const Graph fork = Graph::from_edges(3, {{0, 1}, {0, 2}});
    const Matching pref2 =
        max_matching(fork, VertexSet::of({0}), VertexSet::of({1, 2}), VertexSet::of({2}));
    CHECK(pref2.size() == 1);
    CHECK(pref2.covered.contains(2));
    const Matching plain = max_matching(fork, VertexSet::of({0}), VertexSet::of({1, 2}));
    CHECK(plain.size() == 1);
}

TEST_CASE("max_matching agrees with the exhaustive oracle") {
    std::mt19937 rng(8080);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 13);
        const Graph g = random_graph(n, rng, 2);
        VertexSet u, w;
        for (int v = 0; v < n; ++v) {
            const int roll = static_cast<int>(rng() % 3);
            if (roll == 0 && u.count() < 7) u = u.with(v);
            else if (roll == 1 && w.count() < 7) w = w.with(v);
        }
        const Matching m = max_matching(g, u, w);
        CHECK(m.size() == naive_max_matching(g, u, w));
        for (auto [a, b] : m.pairs) {
            CHECK(u.contains(a));
            CHECK(w.contains(b));
            CHECK(g.adjacent(a, b));
        }
    }
}

TEST_CASE("preferred coverage is maximal among maximum matchings") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const Graph g = random_graph(n, rng, 2);
        VertexSet u, w;
        for (int v = 0; v < n; ++v) {
            const int roll = static_cast<int>(rng() % 3);
            if (roll == 0 && u.count() < 5) u = u.with(v);
            else if (roll == 1 && w.count() < 5) w = w.with(v);
        }
        const VertexSet prefer = random_subset(n, rng) & (u | w);
        const Matching m = max_matching(g, u, w, prefer);

        // oracle: enumerate all maximum matchings, track the best coverage
        std::vector<int> us, ws;
        for (int v : u) us.push_back(v);
        for (int v : w) ws.push_back(v);
        int best_size = 0, best_cover = 0;
        auto rec = [&](auto&& self, std::size_t i, std::uint64_t used, int size, int cover) -> void {
            if (size > best_size) {
                best_size = size;
                best_cover = cover;
            } else if (size == best_size) {
                best_cover = std::max(best_cover, cover);
            }
            if (i == us.size()) return;
            self(self, i + 1, used, size, cover);
            for (std::size_t j = 0; j < ws.size(); ++j) {
                if ((used >> j) & 1 || !g.adjacent(us[i], ws[j])) continue;
                const int gain = (prefer.contains(us[i]) ? 1 : 0) + (prefer.contains(ws[j]) ? 1 : 0);
                self(self, i + 1, used | (std::uint64_t{1} << j), size + 1, cover + gain);
            }
        };
        rec(rec, 0, 0, 0, 0);
        CHECK(m.size() == best_size);
        CHECK((m.covered & prefer).count() == best_cover);
    }
}

TEST_CASE("select_B") {
    const BlowupGraph k33 = blowup({Graph::from_edges(2, {{0, 1}}), {3, 3}});
    // n = 2s: nothing to match, B must be all of A2
    const VertexSet b = select_B(k33.graph, k33.classes[0], k33.classes[1], 3);
    CHECK(b == k33.classes[1]);

    const BlowupGraph p = perturb_canonical(49, 18, 1);
    const VertexSet a1 = p.graph.neighborhood(p.classes[2]);
    VertexSet a2;
    const Fortress f = build_fortress(p.graph, 18);
    for (const auto& member : f.members)
        if (!member.intersects(a1)) {
            a2 = member;
            break;
        }
    REQUIRE(a2.count() == 18);
    const VertexSet b49 = select_B(p.graph, a1, a2, 5);
    CHECK(b49.count() == 5);
    CHECK(b49.subset_of(a2));
    CHECK_FALSE(b49.intersects(a1));
    const Matching m = max_matching(p.graph, p.graph.vertices() - a1 - a2, a2);
    CHECK_FALSE(b49.intersects(m.covered));

    CHECK_THROWS_AS(select_B(k33.graph, k33.classes[0], k33.classes[1], 4),
                    std::invalid_argument);
    // oversize request relative to the unmatched remainder
    const Graph c5 = andrasfai(2);
    CHECK_THROWS_AS(select_B(c5, VertexSet::of({0, 1}), VertexSet::of({2}), 2),
                    std::invalid_argument);
}

TEST_CASE("select_B honors must_include") {
    const BlowupGraph k33 = blowup({Graph::from_edges(2, {{0, 1}}), {3, 3}});
    const VertexSet must = VertexSet{}.with(k33.classes[1].lowest());
    const VertexSet b = select_B(k33.graph, k33.classes[0], k33.classes[1], 3, {}, must);
    CHECK(must.subset_of(b));
    CHECK_THROWS_AS(
        select_B(k33.graph, k33.classes[0], k33.classes[1], 3, {}, k33.classes[0]),
        std::invalid_argument);
}

TEST_CASE("imprint_to_mould on K_{s,s} with the K2 pattern") {
    const BlowupGraph k33 = blowup({Graph::from_edges(2, {{0, 1}}), {3, 3}});
    const CanoniseResult r = imprint_to_mould(
        k33.graph, Params{6, 3}, 1, {k33.classes[0], k33.classes[1]});
    CHECK(r.graph.edge_count() == 9);
    CHECK(r.mould.psi[0].count() == 3);
    CHECK(r.mould.psi[1].count() == 3);
    CHECK(check_mould(r.graph, Params{6, 3}, r.mould).all_ok());
    for (const auto& step : r.trace) {
        CHECK(step.triangle_free);
        CHECK(step.alpha_ok);
        CHECK(step.edges_preserved);
    }
}

namespace {

CanoniseResult run_pipeline(const Graph& g, Params params, int k) {
    const Fortress f = build_fortress(g, params.s);
    const auto imprint = find_imprint(f, andrasfai(k));
    REQUIRE(imprint.has_value());
    std::vector<VertexSet> a_sets;
    for (int idx : imprint->map) a_sets.push_back(f.members[static_cast<std::size_t>(idx)]);
    return imprint_to_mould(g, params, k, a_sets);
}

} // namespace

TEST_CASE("imprint_to_mould on the perturbed (49,18) blow-up") {
    const Params params{49, 18};
    const CanoniseResult r = run_pipeline(perturb_canonical(49, 18, 1).graph, params, 3);
    CHECK(r.graph.is_triangle_free());
    CHECK(r.graph.edge_count() == 438);
    CHECK(alpha(r.graph).alpha == 18);
    CHECK(r.trace.size() == 8);
    for (const auto& step : r.trace) {
        CHECK(step.triangle_free);
        CHECK(step.alpha_ok);
        CHECK(step.edges_preserved);
        CHECK(step.b.count() == 5);
    }
    const MouldReport rep = check_mould(r.graph, params, r.mould);
    CHECK(rep.structurally_valid);
    CHECK(rep.psi_disjoint);
    CHECK(rep.member_equivalences);
    CHECK(rep.union_induces_blowup);
    CHECK(rep.all_ok());
}

TEST_CASE("imprint_to_mould on the already canonical (49,18) blow-up") {
    const Params params{49, 18};
    const CanoniseResult r = run_pipeline(canonical_blowup(49, 4, 18).graph, params, 3);
    CHECK(r.graph.edge_count() == 438);
    CHECK(alpha(r.graph).alpha == 18);
    CHECK(check_mould(r.graph, params, r.mould).all_ok());
}

TEST_CASE("imprint_to_mould across bands and patterns") {
    // pentagon pattern on a balanced pentagon blow-up
    {
        const Params params{15, 6};
        const CanoniseResult r = run_pipeline(canonical_blowup(15, 2, 6).graph, params, 2);
        CHECK(r.graph.edge_count() == g_formula(2, 15, 6));
        CHECK(alpha(r.graph).alpha == 6);
        CHECK(r.trace.size() == 5);
        CHECK(check_mould(r.graph, params, r.mould).all_ok());
    }
    // Wagner pattern inside the k=4 band at a second instance
    {
        const Params params{30, 11};
        const CanoniseResult r = run_pipeline(perturb_canonical(30, 11, 1).graph, params, 3);
        CHECK(r.graph.edge_count() == g_formula(4, 30, 11));
        CHECK(alpha(r.graph).alpha == 11);
        CHECK(check_mould(r.graph, params, r.mould).all_ok());
    }
}

TEST_CASE("imprint_to_mould validates its inputs") {
    const BlowupGraph k33 = blowup({Graph::from_edges(2, {{0, 1}}), {3, 3}});
    CHECK_THROWS_AS(imprint_to_mould(k33.graph, Params{6, 3}, 1, {k33.classes[0]}),
                    std::invalid_argument);
    // not an imprint: the two sets intersect but K2 needs them disjoint
    VertexSet a = k33.classes[0];
    VertexSet b = a.without(a.lowest()).with(k33.classes[1].lowest());
    CHECK_THROWS_AS(imprint_to_mould(k33.graph, Params{6, 3}, 1, {a, b}),
                    std::invalid_argument);
}
