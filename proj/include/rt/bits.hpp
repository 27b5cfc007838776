#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>

namespace rt {

/// Set of vertices over a universe of at most 64 vertices, stored as a bitmask.
struct VertexSet {
    std::uint64_t bits = 0;

    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t raw) : bits(raw) {}

    static constexpr VertexSet of(std::initializer_list<int> vs) {
        VertexSet s;
        for (int v : vs) s.bits |= std::uint64_t{1} << v;
        return s;
    }

    /// {0, 1, ..., n-1}
    static constexpr VertexSet full(int n) {
        return VertexSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }

    constexpr bool contains(int v) const { return (bits >> v) & 1u; }
    constexpr bool empty() const { return bits == 0; }
    constexpr int count() const { return std::popcount(bits); }
    constexpr int lowest() const { return std::countr_zero(bits); }

    constexpr VertexSet with(int v) const { return VertexSet{bits | (std::uint64_t{1} << v)}; }
    constexpr VertexSet without(int v) const { return VertexSet{bits & ~(std::uint64_t{1} << v)}; }

    constexpr bool intersects(VertexSet o) const { return (bits & o.bits) != 0; }
    constexpr bool subset_of(VertexSet o) const { return (bits & ~o.bits) == 0; }

    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet{a.bits & b.bits}; }
    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet{a.bits | b.bits}; }
    friend constexpr VertexSet operator^(VertexSet a, VertexSet b) { return VertexSet{a.bits ^ b.bits}; }
    /// set difference
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet{a.bits & ~b.bits}; }
    friend constexpr bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
    friend constexpr bool operator<(VertexSet a, VertexSet b) { return a.bits < b.bits; }

    struct iterator {
        std::uint64_t rest;
        constexpr int operator*() const { return std::countr_zero(rest); }
        constexpr iterator& operator++() { rest &= rest - 1; return *this; }
        constexpr bool operator!=(iterator o) const { return rest != o.rest; }
    };
    constexpr iterator begin() const { return {bits}; }
    constexpr iterator end() const { return {0}; }
};

} // namespace rt
