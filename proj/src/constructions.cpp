#include "rt/constructions.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace rt {

Graph andrasfai(int k) {
    if (k < 1)
        throw std::invalid_argument("andrasfai: k must be at least 1");
    const int n = 3 * k - 1;
    if (n > kMaxVertices)
        throw std::invalid_argument("andrasfai: 3k-1 exceeds 64-vertex capacity");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int d = k; d <= 2 * k - 1; ++d) {
            const int j = (i + d) % n;
            if (i < j) edges.emplace_back(i, j);
        }
    return Graph::from_edges(n, edges);
}

BlowupGraph blowup(const BlowupSpec& spec) {
    const int h = spec.base.order();
    if (static_cast<int>(spec.sizes.size()) != h)
        throw std::invalid_argument("blowup: one class size per base vertex required");
    long long total = 0;
    for (int sz : spec.sizes) {
        if (sz < 0) throw std::invalid_argument("blowup: negative class size");
        total += sz;
    }
    if (total > kMaxVertices)
        throw std::invalid_argument("blowup: total size exceeds 64-vertex capacity");

    BlowupGraph out;
    out.class_of.resize(static_cast<std::size_t>(total));
    out.classes.resize(static_cast<std::size_t>(h));
    int next = 0;
    for (int i = 0; i < h; ++i) {
        VertexSet cls;
        for (int t = 0; t < spec.sizes[static_cast<std::size_t>(i)]; ++t) {
            out.class_of[static_cast<std::size_t>(next)] = i;
            cls = cls.with(next++);
        }
        out.classes[static_cast<std::size_t>(i)] = cls;
    }
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(total), 0);
    for (int i = 0; i < h; ++i)
        for (int j : spec.base.neighbors(i))
            for (int v : out.classes[static_cast<std::size_t>(i)])
                rows[static_cast<std::size_t>(v)] |= out.classes[static_cast<std::size_t>(j)].bits;
    out.graph = Graph::from_rows(std::move(rows));
    return out;
}

long long g_formula(int k, long long n, long long s) {
    if (k < 1)
        throw std::invalid_argument("g_formula: k must be at least 1");
    const long long doubled = static_cast<long long>(k) * (k - 1) * n * n
                            - 2LL * k * (3 * k - 4) * n * s
                            + static_cast<long long>(3 * k - 4) * (3 * k - 1) * s * s;
    if (doubled % 2 != 0)
        throw std::logic_error("g_formula: doubled value is odd");
    return doubled / 2;
}

BlowupGraph canonical_blowup(int n, int k, int s) {
    if (k < 2)
        throw std::invalid_argument("canonical_blowup: k must be at least 2");
    const int verts = 3 * k - 1;
    if (verts > kMaxVertices || n > kMaxVertices)
        throw std::invalid_argument("canonical_blowup: capacity exceeded");
    const int small = (k - 1) * n - (3 * k - 4) * s;
    const int large = 3 * s - n;
    // below kn/(3k-1) a window with two small classes would be independent and
    // larger than s
    if (small < 0 || large < 0 || s * (3 * k - 1) < k * n)
        throw std::invalid_argument("canonical_blowup: (n,k,s) outside the admissible band");
    BlowupSpec spec{andrasfai(k), std::vector<int>(static_cast<std::size_t>(verts), large)};
    spec.sizes[1] = small;
    spec.sizes[static_cast<std::size_t>(k)] = small;
    spec.sizes[static_cast<std::size_t>(2 * k % verts)] = small;
    return blowup(spec);
}

BlowupGraph perturb_canonical(int n, int s, int j) {
    const int small = 3 * n - 8 * s;
    const int large = 3 * s - n;
    if (small < 0 || large < 0)
        throw std::invalid_argument("perturb_canonical: (n,s) outside the k=4 band");
    const int at4 = small + j;
    const int at5 = large - j;
    if (at4 < small || at4 > large || at5 < small || at5 > large)
        throw std::invalid_argument("perturb_canonical: adjusted class size leaves [3n-8s, 3s-n]");
    BlowupSpec spec{andrasfai(4), std::vector<int>(11, large)};
    spec.sizes[1] = small;
    spec.sizes[4] = at4;
    spec.sizes[5] = at5;
    spec.sizes[8] = small;
    return blowup(spec);
}

Bounds bounds(int n, int s) {
    if (s < 0 || s > n)
        throw std::invalid_argument("bounds: need 0 <= s <= n");
    Bounds b{static_cast<long long>(s) * n / 2, std::nullopt};
    for (int k = 1; k <= n; ++k) {
        // cap applies for s at or below the band, or (k >= 2) at or above it
        const bool below = static_cast<long long>(s) * (3 * k - 1) <= static_cast<long long>(k) * n;
        const bool above = k >= 2 &&
            static_cast<long long>(s) * (3 * k - 4) >= static_cast<long long>(k - 1) * n;
        if (!below && !above) continue;
        const long long cap = g_formula(k, n, s);
        if (!b.g_cap || cap < *b.g_cap) b.g_cap = cap;
    }
    return b;
}

} // namespace rt
