#pragma once

#include <optional>
#include <vector>

#include "rt/graph.hpp"

namespace rt {

/// Andrasfai graph: Cayley graph on Z/(3k-1)Z with connection set {k,...,2k-1}.
/// k-regular, triangle-free, independence number k. Vertices are the residues
/// 0,...,3k-2.
Graph andrasfai(int k);

struct BlowupSpec {
    Graph base;
    std::vector<int> sizes; // one per base vertex, zero allowed
};

struct BlowupGraph {
    Graph graph;
    std::vector<int> class_of;       // vertex -> base vertex index
    std::vector<VertexSet> classes;  // base vertex index -> class
};

/// Realize a blow-up: classes laid out contiguously in base-vertex order,
/// fully joined exactly along base edges.
BlowupGraph blowup(const BlowupSpec& spec);

/// ½k(k-1)n² - k(3k-4)ns + ½(3k-4)(3k-1)s², evaluated exactly in integers.
long long g_formula(int k, long long n, long long s);

/// Canonical blow-up of the Andrasfai graph: classes of size (k-1)n-(3k-4)s
/// at residues 1, k, 2k and of size 3s-n elsewhere. Requires both sizes
/// nonnegative and the total to fit in 64 vertices.
BlowupGraph canonical_blowup(int n, int k, int s);

/// The canonical k=4 blow-up with j vertices moved from the class at residue
/// 5 to the class at residue 4; both adjusted sizes must stay within
/// [3n-8s, 3s-n]. Edge count and independence number are unchanged.
BlowupGraph perturb_canonical(int n, int s, int j);

struct Bounds {
    long long trivial;               // floor(s*n/2)
    std::optional<long long> g_cap;  // min over applicable g_k caps
};

/// Upper bounds on ex(n,s): the triangle-free degree bound and, where some
/// band condition s <= kn/(3k-1) or s >= (k-1)n/(3k-4) holds, the best g_k cap.
Bounds bounds(int n, int s);

} // namespace rt
