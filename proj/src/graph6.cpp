#include "rt/graph6.hpp"

#include <stdexcept>

namespace rt {

namespace {
constexpr int kOffset = 63;   // printable offset
constexpr int kLongForm = 126;
} // namespace

std::string to_graph6(const Graph& g) {
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(kOffset + n));
    } else {
        // 18-bit header, big-endian 6-bit groups
        out.push_back(static_cast<char>(kLongForm));
        out.push_back(static_cast<char>(kOffset + ((n >> 12) & 0x3f)));
        out.push_back(static_cast<char>(kOffset + ((n >> 6) & 0x3f)));
        out.push_back(static_cast<char>(kOffset + (n & 0x3f)));
    }
    int group = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            group = (group << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(kOffset + group));
                group = 0;
                nbits = 0;
            }
        }
    if (nbits > 0)
        out.push_back(static_cast<char>(kOffset + (group << (6 - nbits))));
    return out;
}

Graph from_graph6(std::string_view line) {
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= line.size())
            throw std::invalid_argument("graph6: truncated input");
        const int c = static_cast<unsigned char>(line[pos++]);
        if (c < kOffset || c > kLongForm)
            throw std::invalid_argument("graph6: byte outside printable range");
        return c - kOffset;
    };

    if (line.empty())
        throw std::invalid_argument("graph6: empty line");

    long long n = 0;
    if (static_cast<unsigned char>(line[0]) == kLongForm) {
        ++pos;
        if (pos < line.size() && static_cast<unsigned char>(line[pos]) == kLongForm)
            throw std::invalid_argument("graph6: graphs beyond 2^18 vertices unsupported");
        for (int i = 0; i < 3; ++i) {
            const int v = next();
            if (v > 62) throw std::invalid_argument("graph6: malformed size header");
            n = (n << 6) | v;
        }
    } else {
        n = next();
        if (n == kLongForm - kOffset)
            throw std::invalid_argument("graph6: malformed size header");
    }
    if (n > kMaxVertices)
        throw std::invalid_argument("graph6: graph exceeds 64-vertex capacity");

    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
    int group = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (nbits == 0) {
                group = next();
                nbits = 6;
            }
            if ((group >> (nbits - 1)) & 1) {
                rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
                rows[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
            }
            --nbits;
        }
    if (group & ((1 << nbits) - 1))
        throw std::invalid_argument("graph6: nonzero padding bits");
    if (pos != line.size())
        throw std::invalid_argument("graph6: trailing bytes after bit payload");
    return Graph::from_rows(std::move(rows));
}

} // namespace rt
