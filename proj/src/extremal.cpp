#include "rt/extremal.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "rt/canonical.hpp"
#include "rt/constructions.hpp"
#include "rt/fortress.hpp"
#include "rt/independence.hpp"

namespace rt {

namespace {

// triangle-free Ramsey thresholds: every triangle-free graph on R3[t]
// vertices has an independent set of size t
constexpr int kRamsey3[] = {1, 1, 3, 6, 9, 14, 18, 23, 28, 36};

int ramsey3(int t) {
    if (t <= 0) return 1;
    if (t <= 9) return kRamsey3[t];
    return kMaxVertices + 1; // beyond the known table, no shortcut
}

long long mantel(long long m) { return m * m / 4; }

// exact values established earlier in this process
class ExCache {
public:
    std::optional<std::optional<long long>> lookup(int n, int s) const {
        std::lock_guard<std::mutex> lock(mu_);
        const auto it = table_.find({n, s});
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }
    void store(int n, int s, std::optional<long long> value) {
        std::lock_guard<std::mutex> lock(mu_);
        table_[{n, s}] = value;
    }

private:
    mutable std::mutex mu_;
    std::map<std::pair<int, int>, std::optional<long long>> table_;
};

ExCache& cache() {
    static ExCache instance;
    return instance;
}

// canonical prefix key packed into 256 bits; enough for 23 vertices
struct PackedForm {
    std::array<std::uint64_t, 4> words{};
    friend bool operator==(const PackedForm&, const PackedForm&) = default;
};

struct PackedFormHash {
    std::size_t operator()(const PackedForm& f) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t w : f.words) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

PackedForm pack_form(const CanonicalForm& form) {
    PackedForm out;
    int cursor = 0;
    for (int j = 1; j < form.n; ++j) {
        const std::uint64_t col = form.cols[static_cast<std::size_t>(j)];
        const int word = cursor >> 6;
        const int off = cursor & 63;
        out.words[static_cast<std::size_t>(word)] |= col << off;
        if (off + j > 64)
            out.words[static_cast<std::size_t>(word + 1)] |= col >> (64 - off);
        cursor += j;
    }
    return out;
}

using SeenSets = std::vector<std::unordered_set<PackedForm, PackedFormHash>>;

struct Shared {
    int n = 0;
    int s = 0;
    int scap = 0;               // per-vertex degree cap min(s, n-1)
    long long cap_total = 0;    // global edge cap
    std::vector<long long> fut; // fut[m]: cap on edges among m future vertices, -1 impossible
    bool dedup = false;
};

struct Prefix {
    std::vector<std::uint64_t> rows;
    long long edges = 0;
    long long headroom = 0;
};

// Future edges touching the prefix are limited by the prefix headroom h; the
// m future vertices split their degree capacity between cross and internal
// edges, internal also capped by fut[m].
long long future_bound(const Shared& sh, long long h, int m) {
    if (m == 0) return 0;
    const long long f = sh.fut[static_cast<std::size_t>(m)];
    if (f < 0) return -1;
    const long long ms = static_cast<long long>(m) * sh.scap;
    const long long turn = std::clamp((ms - h) / 2, 0LL, f);
    long long best = 0;
    for (long long ff : {0LL, f, turn, std::min(turn + 1, f)}) {
        const long long cross = std::min(h, ms - 2 * ff);
        if (cross < 0) continue;
        best = std::max(best, ff + cross);
    }
    return best;
}

struct Walker {
    const Shared& sh;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;

    std::array<std::uint64_t, kMaxVertices> rows{};
    int level = 0;
    long long edges = 0;
    long long headroom = 0;

    // phase 1 improves `best`; with target >= 0 optimal leaves are collected
    long long best = -1;
    std::vector<std::uint64_t> best_rows; // incumbent leaf of phase 1
    long long target = -1;
    std::map<CanonicalForm, Graph>* witnesses = nullptr;
    std::size_t witness_cap = 0;
    bool witness_truncated = false;

    SeenSets* seen = nullptr;
    int stop_level = -1; // frontier collection point
    std::vector<Prefix>* frontier_out = nullptr;

    Walker(const Shared& shared, std::uint64_t node_budget) : sh(shared), budget(node_budget) {}

    long long need() const { return target >= 0 ? target : best + 1; }

    Graph prefix_graph() const {
        std::vector<std::uint64_t> r(rows.begin(), rows.begin() + level);
        return Graph::from_rows(std::move(r));
    }

    void load(const Prefix& p) {
        rows.fill(0);
        std::copy(p.rows.begin(), p.rows.end(), rows.begin());
        level = static_cast<int>(p.rows.size());
        edges = p.edges;
        headroom = p.headroom;
    }

    void leaf() {
        if (target < 0) {
            if (edges > best) {
                best = edges;
                best_rows.assign(rows.begin(), rows.begin() + level);
            }
            return;
        }
        if (edges != target || !witnesses) return;
        CanonicalForm form = canonical_form(prefix_graph());
        if (witnesses->contains(form)) return;
        if (witnesses->size() >= witness_cap) {
            witness_truncated = true;
            return;
        }
        Graph g = graph_from_form(form);
        witnesses->emplace(std::move(form), std::move(g));
    }

    void descend() {
        if (exhausted) return;
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (level == sh.n) {
            leaf();
            return;
        }
        if (level == stop_level && frontier_out) {
            Prefix p;
            p.rows.assign(rows.begin(), rows.begin() + level);
            p.edges = edges;
            p.headroom = headroom;
            frontier_out->push_back(std::move(p));
            return;
        }
        std::uint64_t allowed = VertexSet::full(level).bits;
        for (int v = 0; v < level; ++v)
            if (std::popcount(rows[static_cast<std::size_t>(v)]) >= sh.scap)
                allowed &= ~(std::uint64_t{1} << v);
        choose(allowed, 0, 0);
    }

    // include-first walk over the independent subsets of the allowed set
    void choose(std::uint64_t cand, std::uint64_t chosen, int count) {
        if (exhausted) return;
        if (cand == 0 || count == sh.scap) {
            child(chosen, count);
            return;
        }
        const int v = std::countr_zero(cand);
        const std::uint64_t bit = std::uint64_t{1} << v;
        choose(cand & ~bit & ~rows[static_cast<std::size_t>(v)], chosen | bit, count + 1);
        choose(cand & ~bit, chosen, count);
    }

    void child(std::uint64_t s_mask, int added) {
        if (exhausted) return;
        const int j = level;
        const long long e2 = edges + added;
        const long long h2 = headroom - added + (sh.scap - added);
        const int m = sh.n - (j + 1);
        const long long fb = future_bound(sh, h2, m);
        if (fb < 0) return;
        if (std::min(e2 + fb, sh.cap_total) < need()) return;

        // an independent s-set avoiding the new neighborhood would extend by
        // the new vertex and push alpha past s
        if (j + 1 > sh.s) {
            const std::uint64_t rest = VertexSet::full(j).bits & ~s_mask;
            if (has_independent_set(rows.data(), rest, sh.s)) return;
        }

        rows[static_cast<std::size_t>(j)] = s_mask;
        for (int v : VertexSet{s_mask}) rows[static_cast<std::size_t>(v)] |= std::uint64_t{1} << j;
        const long long e_save = edges;
        const long long h_save = headroom;
        edges = e2;
        headroom = h2;
        ++level;

        bool skip = false;
        if (seen && sh.dedup && level < sh.n) {
            const PackedForm key = pack_form(canonical_form(prefix_graph()));
            skip = !(*seen)[static_cast<std::size_t>(level)].insert(key).second;
        }
        if (!skip) descend();

        --level;
        edges = e_save;
        headroom = h_save;
        rows[static_cast<std::size_t>(j)] = 0;
        for (int v : VertexSet{s_mask})
            rows[static_cast<std::size_t>(v)] &= ~(std::uint64_t{1} << j);
    }
};

std::vector<Graph> seed_graphs(int n, int s) {
    std::vector<Graph> seeds;
    if (n == 0) return seeds;
    if (s >= n) seeds.push_back(Graph::empty(n));
    if (2 * s >= n) {
        const int a = n / 2;
        seeds.push_back(blowup({Graph::from_edges(2, {{0, 1}}), {a, n - a}}).graph);
    }
    for (int k = 2; k <= 21; ++k) {
        // the largest admissible s' <= s maximizes g_k over the band
        const int sp = std::min(s, ((k - 1) * n) / (3 * k - 4));
        const int small = (k - 1) * n - (3 * k - 4) * sp;
        const int large = 3 * sp - n;
        if (small < 0 || large < 0 || sp * (3 * k - 1) < k * n) continue;
        seeds.push_back(canonical_blowup(n, k, sp).graph);
    }
    return seeds;
}

// run the per-prefix tasks over a small pool; the task list and per-task
// budgets are fixed up front, so results cannot depend on scheduling
template <typename TaskFn>
void run_pool(std::size_t task_count, int threads, TaskFn&& task) {
    const int workers = std::max(1, threads);
    std::atomic<std::size_t> next{0};
    auto loop = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= task_count) return;
            task(i);
        }
    };
    if (workers == 1 || task_count <= 1) {
        loop();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
}

} // namespace

ExResult ex_exact(int n, int s, const ExOptions& opts) {
    if (n < 0 || n > kMaxVertices || s < 0 || s > n)
        throw std::invalid_argument("ex_exact: need 0 <= s <= n <= 64");
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    ExResult out;
    if (n == 0) {
        out.value = 0;
        out.witnesses.push_back(Graph::empty(0));
        out.millis = elapsed();
        cache().store(n, s, out.value);
        return out;
    }

    Shared sh;
    sh.n = n;
    sh.s = s;
    sh.scap = std::min(s, n - 1);
    sh.dedup = n <= 23;

    const Bounds bn = bounds(n, s);
    sh.cap_total = std::min(bn.trivial, mantel(n));
    if (bn.g_cap) sh.cap_total = std::min(sh.cap_total, *bn.g_cap);

    sh.fut.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int m = 1; m <= n; ++m) {
        const int sp = std::min(s, m);
        if (m >= ramsey3(sp + 1)) {
            sh.fut[static_cast<std::size_t>(m)] = -1;
            continue;
        }
        long long f = std::min(mantel(m), static_cast<long long>(m) * std::min(s, m - 1) / 2);
        const Bounds bm = bounds(m, sp);
        if (bm.g_cap) f = std::min(f, std::max(0LL, *bm.g_cap));
        if (const auto hit = cache().lookup(m, sp)) {
            if (!hit->has_value())
                f = -1;
            else
                f = std::min(f, **hit);
        }
        sh.fut[static_cast<std::size_t>(m)] = f;
    }

    long long seed_best = -1;
    for (const Graph& g : seed_graphs(n, s))
        if (g.is_triangle_free() && !has_independent_set(g, g.vertices(), s + 1))
            seed_best = std::max(seed_best, g.edge_count());

    std::uint64_t used = 0;
    bool exhausted = false;
    long long value = -1;
    bool value_known = false;
    // incumbent optimal leaf (smallest canonical form among those found)
    std::optional<CanonicalForm> incumbent;
    long long incumbent_value = -1;
    auto offer_incumbent = [&](long long v, const std::vector<std::uint64_t>& leaf_rows) {
        if (v < 0 || leaf_rows.empty()) return;
        CanonicalForm form = canonical_form(Graph::from_rows(leaf_rows));
        if (v > incumbent_value || (v == incumbent_value && incumbent && form < *incumbent)) {
            incumbent_value = v;
            incumbent = std::move(form);
        }
    };

    SeenSets seen(static_cast<std::size_t>(n) + 1);
    auto reset_seen = [&]() {
        for (auto& level_set : seen) level_set.clear();
    };

    // short deterministic dive: either finishes the whole search or firms up
    // the lower bound before the task split
    {
        Walker dive(sh, std::min<std::uint64_t>(opts.node_budget, 50'000));
        dive.best = seed_best;
        dive.seen = &seen;
        dive.descend();
        used += dive.nodes;
        seed_best = std::max(seed_best, dive.best);
        offer_incumbent(dive.best, dive.best_rows);
        if (!dive.exhausted) {
            value = dive.best;
            value_known = true;
        }
    }

    const int frontier_level = std::max(0, std::min(6, n - 1));
    std::vector<Prefix> frontier;
    auto build_frontier = [&](long long keep_at_least) -> bool {
        reset_seen();
        frontier.clear();
        Walker scout(sh, opts.node_budget > used ? opts.node_budget - used : 0);
        scout.best = keep_at_least; // prunes only strictly below, keeping ties
        scout.target = keep_at_least;
        scout.seen = &seen;
        scout.stop_level = frontier_level;
        scout.frontier_out = &frontier;
        scout.descend();
        used += scout.nodes;
        return scout.exhausted;
    };

    if (!value_known) {
        exhausted |= build_frontier(seed_best);
        const std::uint64_t left = opts.node_budget > used ? opts.node_budget - used : 0;
        const std::uint64_t per_task =
            frontier.empty() ? 0 : std::max<std::uint64_t>(1, left / frontier.size());
        std::vector<long long> results(frontier.size(), -1);
        std::vector<std::vector<std::uint64_t>> task_rows(frontier.size());
        std::vector<std::uint64_t> task_nodes(frontier.size(), 0);
        std::vector<char> task_exhausted(frontier.size(), 0);
        run_pool(frontier.size(), opts.threads, [&](std::size_t i) {
            Walker w(sh, per_task);
            w.best = seed_best;
            SeenSets local(static_cast<std::size_t>(n) + 1);
            w.seen = &local;
            w.load(frontier[i]);
            w.descend();
            results[i] = w.best;
            task_rows[i] = std::move(w.best_rows);
            task_nodes[i] = w.nodes;
            task_exhausted[i] = w.exhausted;
        });
        value = seed_best;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            value = std::max(value, results[i]);
            offer_incumbent(results[i], task_rows[i]);
            used += task_nodes[i];
            exhausted |= task_exhausted[i] != 0;
        }
        value_known = true;
    }

    out.value = value >= 0 ? std::optional<long long>(value) : std::nullopt;
    out.exact = !exhausted;
    if (out.exact) cache().store(n, s, out.value);

    // witness enumeration is a desk-scale feature; above it, optimal leaves
    // form plateaus the bounds cannot cut and witnesses come from the
    // constructions instead
    constexpr int kWitnessSearchMax = 13;
    if (out.value && opts.witness_cap > 0 && n > kWitnessSearchMax) {
        std::map<CanonicalForm, Graph> collected;
        for (const Graph& g : seed_graphs(n, s)) {
            if (g.edge_count() != *out.value || !g.is_triangle_free()) continue;
            if (has_independent_set(g, g.vertices(), s + 1)) continue;
            CanonicalForm form = canonical_form(g);
            if (!collected.contains(form)) {
                Graph labeled = graph_from_form(form);
                collected.emplace(std::move(form), std::move(labeled));
            }
        }
        if (incumbent && incumbent_value == *out.value && !collected.contains(*incumbent))
            collected.emplace(*incumbent, graph_from_form(*incumbent));
        for (auto& [form, g] : collected) {
            if (out.witnesses.size() >= opts.witness_cap) {
                out.witnesses_truncated = true;
                break;
            }
            out.witnesses.push_back(g);
        }
    } else if (out.value && opts.witness_cap > 0 && out.exact) {
        bool scout_starved = false;
        if (frontier.empty()) scout_starved = build_frontier(*out.value);
        const std::uint64_t left = opts.node_budget > used ? opts.node_budget - used : 0;
        const std::uint64_t per_task =
            frontier.empty() ? 0 : std::max<std::uint64_t>(1, left / frontier.size());
        std::vector<std::map<CanonicalForm, Graph>> task_wits(frontier.size());
        std::vector<char> task_trunc(frontier.size(), 0);
        std::vector<std::uint64_t> task_nodes(frontier.size(), 0);
        run_pool(frontier.size(), opts.threads, [&](std::size_t i) {
            Walker w(sh, per_task);
            w.target = *out.value;
            w.witnesses = &task_wits[i];
            w.witness_cap = opts.witness_cap;
            SeenSets local(static_cast<std::size_t>(n) + 1);
            w.seen = &local;
            w.load(frontier[i]);
            w.descend();
            task_trunc[i] = w.witness_truncated || w.exhausted;
            task_nodes[i] = w.nodes;
        });
        std::map<CanonicalForm, Graph> collected;
        bool truncated = scout_starved;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            used += task_nodes[i];
            truncated |= task_trunc[i] != 0;
            for (auto& [form, g] : task_wits[i])
                if (!collected.contains(form)) collected.emplace(form, g);
        }
        if (collected.size() > opts.witness_cap) truncated = true;
        for (auto& [form, g] : collected) {
            if (out.witnesses.size() >= opts.witness_cap) break;
            out.witnesses.push_back(g);
        }
        out.witnesses_truncated = truncated;
    }

    out.nodes = used;
    out.millis = elapsed();
    return out;
}

std::vector<SweepRow> verify_formulas(int n, const ExOptions& opts) {
    std::vector<SweepRow> rows;
    for (int s = 0; s <= n; ++s) {
        SweepRow row;
        row.n = n;
        row.s = s;
        const ExResult r = ex_exact(n, s, opts);
        row.ex = r.value;
        row.exact = r.exact;
        row.witness_count = r.witnesses.size();
        row.nodes = r.nodes;
        row.millis = r.millis;
        const Bounds b = bounds(n, s);
        row.trivial_bound = b.trivial;
        row.g_cap = b.g_cap;

        if (2 * s >= n) {
            row.formula = "mantel";
            row.formula_value = mantel(n);
        } else if (5 * s >= 2 * n) {
            row.formula = "g2";
            row.formula_value = g_formula(2, n, s);
        } else if (8 * s >= 3 * n) {
            row.formula = "g3";
            row.formula_value = g_formula(3, n, s);
        } else if (11 * s >= 4 * n) {
            row.formula = "g4";
            row.formula_value = g_formula(4, n, s);
        }
        if (row.formula_value)
            row.match = row.ex.has_value() && *row.ex == *row.formula_value && row.exact;
        if (row.ex && row.g_cap) row.cap_ok = *row.ex <= *row.g_cap;
        rows.push_back(std::move(row));
    }
    return rows;
}

ExtremalReport extremal_properties(const Graph& g, Params params) {
    if (g.order() != params.n)
        throw std::invalid_argument("extremal_properties: params do not match the graph");
    if (!g.is_triangle_free())
        throw std::invalid_argument("extremal_properties: graph has a triangle");
    if (alpha(g).alpha != params.s)
        throw std::invalid_argument("extremal_properties: s is not the independence number");

    ExtremalReport rep;
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) <= params.low_degree()) ++rep.low_degree_count;
    rep.low_degree_applicable = 11 * params.s > 4 * params.n && 8 * params.s < 3 * params.n;
    rep.low_degree_ok = rep.low_degree_count < params.surplus();

    const Fortress f = build_fortress(g, params.s);
    rep.fortress_size = f.size();
    rep.fortress_edge_applicable = params.n >= 2 * params.s;
    for (std::size_t i = 0; i < f.size() && !rep.fortress_edge; ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            if (f.adjacent(i, j)) {
                rep.fortress_edge = true;
                break;
            }
    const FortressChecks checks = fortress_checks(f);
    rep.fortress_tf_applicable = 3 * params.s > params.n;
    rep.fortress_triangle_free = checks.triangle_free;
    rep.fortress_bipartite = checks.bipartition.has_value();
    rep.pentagon_imprint = find_imprint(f, andrasfai(2)).has_value();
    return rep;
}

} // namespace rt
