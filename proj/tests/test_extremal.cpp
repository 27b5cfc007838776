#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "rt/canonical.hpp"
#include "rt/constructions.hpp"
#include "rt/extremal.hpp"
#include "rt/graph6.hpp"
#include "rt/independence.hpp"

using namespace rt;

namespace {

// Every graph on n vertices up to isomorphism, by vertex extension with
// canonical-form rejection. Counts are pinned against the classical sequence.
std::vector<Graph> all_graphs(int n) {
    std::vector<Graph> current{Graph::empty(0)};
    for (int level = 1; level <= n; ++level) {
        std::set<CanonicalForm> seen;
        std::vector<Graph> next;
        for (const Graph& g : current) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (level - 1)); ++mask) {
                std::vector<std::uint64_t> rows;
                for (int v = 0; v < level - 1; ++v)
                    rows.push_back(g.row(v) | (((mask >> v) & 1u) << (level - 1)));
                rows.push_back(mask);
                const Graph h = Graph::from_rows(std::move(rows));
                if (seen.insert(canonical_form(h)).second) next.push_back(h);
            }
        }
        current = std::move(next);
    }
    return current;
}

int naive_alpha(const Graph& g) {
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.order()); ++mask) {
        const VertexSet s{mask};
        if (s.count() > best && is_independent(g, s)) best = s.count();
    }
    return best;
}

// brute-force oracle over the corpus: for each s, the max edge count among
// triangle-free graphs with alpha <= s (one alpha pass, then prefix maxima)
std::vector<std::optional<long long>> naive_ex_table(const std::vector<Graph>& corpus, int n) {
    std::vector<long long> best_at_alpha(static_cast<std::size_t>(n) + 1, -1);
    for (const Graph& g : corpus) {
        if (!g.is_triangle_free()) continue;
        auto& slot = best_at_alpha[static_cast<std::size_t>(naive_alpha(g))];
        slot = std::max(slot, g.edge_count());
    }
    std::vector<std::optional<long long>> table(static_cast<std::size_t>(n) + 1);
    long long run = -1;
    for (int s = 0; s <= n; ++s) {
        run = std::max(run, best_at_alpha[static_cast<std::size_t>(s)]);
        if (run >= 0) table[static_cast<std::size_t>(s)] = run;
    }
    return table;
}

} // namespace

TEST_CASE("graph corpus generator matches the classical counts") {
    CHECK(all_graphs(4).size() == 11);
    CHECK(all_graphs(5).size() == 34);
    CHECK(all_graphs(6).size() == 156);
    CHECK(all_graphs(7).size() == 1044);
}

TEST_CASE("ex on pinned small instances") {
    ExOptions opts;
    const ExResult r52 = ex_exact(5, 2, opts);
    REQUIRE(r52.value.has_value());
    CHECK(*r52.value == 5);
    REQUIRE(!r52.witnesses.empty());
    CHECK(isomorphic(r52.witnesses.front(), andrasfai(2)));

    const ExResult r62 = ex_exact(6, 2, opts);
    CHECK_FALSE(r62.value.has_value());
    CHECK(r62.exact);
    CHECK(r62.witnesses.empty());

    const ExResult r63 = ex_exact(6, 3, opts);
    REQUIRE(r63.value.has_value());
    CHECK(*r63.value == 9);

    const ExResult r73 = ex_exact(7, 3, opts);
    REQUIRE(r73.value.has_value());
    CHECK(*r73.value == 10);

    const ExResult r83 = ex_exact(8, 3, opts);
    REQUIRE(r83.value.has_value());
    CHECK(*r83.value == 12);
    bool has_wagner = false;
    for (const auto& w : r83.witnesses) has_wagner |= isomorphic(w, andrasfai(3));
    CHECK(has_wagner);
}

TEST_CASE("ex(10,4) and ex(11,4)") {
    const ExResult r104 = ex_exact(10, 4, {});
    REQUIRE(r104.value.has_value());
    CHECK(*r104.value == 20);
    bool has_balanced = false;
    const Graph balanced = blowup({andrasfai(2), {2, 2, 2, 2, 2}}).graph;
    for (const auto& w : r104.witnesses) has_balanced |= isomorphic(w, balanced);
    CHECK(has_balanced);

    const ExResult r114 = ex_exact(11, 4, {});
    REQUIRE(r114.value.has_value());
    CHECK(*r114.value == 22);
    bool has_gamma4 = false;
    for (const auto& w : r114.witnesses) has_gamma4 |= isomorphic(w, andrasfai(4));
    CHECK(has_gamma4);
}

TEST_CASE("ex agrees with the corpus oracle up to n = 9") {
    for (int n = 0; n <= 9; ++n) {
        const auto corpus = all_graphs(n);
        const auto table = naive_ex_table(corpus, n);
        for (int s = 0; s <= n; ++s) {
            const ExResult r = ex_exact(n, s, {});
            CHECK(r.exact);
            CHECK(r.value == table[static_cast<std::size_t>(s)]);
        }
    }
}

TEST_CASE("witnesses validate and deduplicate") {
    const ExResult r = ex_exact(8, 3, {});
    REQUIRE(r.value.has_value());
    std::set<CanonicalForm> forms;
    for (const auto& w : r.witnesses) {
        CHECK(w.order() == 8);
        CHECK(w.is_triangle_free());
        CHECK(alpha(w).alpha <= 3);
        CHECK(w.edge_count() == *r.value);
        CHECK(forms.insert(canonical_form(w)).second);
    }
}

TEST_CASE("ex monotone in s and below the trivial bound") {
    for (int n = 4; n <= 9; ++n) {
        std::optional<long long> prev;
        for (int s = 0; s <= n; ++s) {
            const ExResult r = ex_exact(n, s, {});
            if (r.value) {
                CHECK(*r.value <= static_cast<long long>(s) * n / 2);
                if (prev) CHECK(*r.value >= *prev);
                prev = r.value;
            } else {
                CHECK(!prev.has_value());
            }
        }
    }
}

TEST_CASE("ex at least the canonical blow-up value") {
    const std::vector<std::tuple<int, int, int>> cases = {
        {10, 2, 4}, {11, 4, 4}, {8, 3, 3}, {13, 3, 5}};
    for (auto [n, k, s] : cases) {
        const ExResult r = ex_exact(n, s, {});
        REQUIRE(r.value.has_value());
        CHECK(*r.value >= canonical_blowup(n, k, s).graph.edge_count());
    }
}

TEST_CASE("budget exhaustion is flagged, never silent") {
    // at (11,4) the band cap matches the seed, so even a tiny budget suffices
    ExOptions tiny;
    tiny.node_budget = 3;
    const ExResult closed = ex_exact(11, 4, tiny);
    CHECK(closed.exact);
    REQUIRE(closed.value.has_value());
    CHECK(*closed.value == 22);

    // at (12,5) the caps leave a gap and the search really has to run
    const ExResult r = ex_exact(12, 5, tiny);
    CHECK_FALSE(r.exact);
    // the seeded lower bound is still reported
    REQUIRE(r.value.has_value());
    CHECK(*r.value >= 29);
    CHECK(*r.value <= 32);
}

TEST_CASE("thread-count invariance") {
    ExOptions one;
    one.threads = 1;
    ExOptions two;
    two.threads = 2;
    const ExResult a = ex_exact(9, 4, one);
    const ExResult b = ex_exact(9, 4, two);
    CHECK(a.value == b.value);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i)
        CHECK(to_graph6(a.witnesses[i]) == to_graph6(b.witnesses[i]));
}

TEST_CASE("verify_formulas rows") {
    const auto rows = verify_formulas(8, {});
    REQUIRE(rows.size() == 9);
    const SweepRow& r3 = rows[3];
    REQUIRE(r3.ex.has_value());
    CHECK(*r3.ex == 12);
    CHECK(r3.formula == "g3");
    REQUIRE(r3.formula_value.has_value());
    CHECK(*r3.formula_value == 12);
    CHECK(r3.match.has_value());
    CHECK(*r3.match);
    const SweepRow& r4 = rows[4];
    CHECK(r4.formula == "mantel");
    REQUIRE(r4.ex.has_value());
    CHECK(*r4.ex == 16);
    for (const auto& row : rows) {
        if (row.match) CHECK(*row.match);
        CHECK(row.cap_ok);
    }

    const auto rows10 = verify_formulas(10, {});
    const SweepRow& r104 = rows10[4];
    CHECK(r104.formula == "g2");
    REQUIRE(r104.formula_value.has_value());
    CHECK(*r104.formula_value == 20);
    CHECK(r104.match.value_or(false));
}

TEST_CASE("extremal witnesses have a fortress edge whenever n >= 2s") {
    for (int n = 6; n <= 10; ++n)
        for (int s = 2; 2 * s <= n; ++s) {
            const ExResult r = ex_exact(n, s, {});
            if (!r.value) continue;
            for (const Graph& w : r.witnesses) {
                if (alpha(w).alpha != s) continue; // census requires equality
                const ExtremalReport rep = extremal_properties(w, Params{n, s});
                CHECK(rep.fortress_edge_applicable);
                CHECK(rep.fortress_edge);
            }
        }
}

TEST_CASE("extremal_properties census") {
    {
        const Graph g = canonical_blowup(19, 4, 7).graph;
        const ExtremalReport rep = extremal_properties(g, Params{19, 7});
        CHECK(rep.low_degree_applicable);
        CHECK(rep.low_degree_count == 1); // only the class at residue 8 has degree 6
        CHECK(rep.low_degree_ok);
        CHECK(rep.fortress_edge_applicable);
        CHECK(rep.fortress_edge);
        CHECK(rep.fortress_tf_applicable);
        CHECK(rep.fortress_triangle_free);
    }
    {
        // boundary s = 4n/11: the census is out of its applicable band
        const ExtremalReport rep = extremal_properties(andrasfai(4), Params{11, 4});
        CHECK_FALSE(rep.low_degree_applicable);
        CHECK(rep.low_degree_count == 11);
        CHECK(rep.fortress_triangle_free);
    }
    {
        const ExResult r = ex_exact(8, 3, {});
        REQUIRE(!r.witnesses.empty());
        for (const auto& w : r.witnesses) {
            const ExtremalReport rep = extremal_properties(w, Params{8, 3});
            CHECK(rep.fortress_triangle_free);
            CHECK(rep.fortress_edge);
        }
    }
    CHECK_THROWS_AS(extremal_properties(andrasfai(4), Params{11, 5}), std::invalid_argument);
}
