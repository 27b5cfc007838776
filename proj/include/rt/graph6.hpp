#pragma once

#include <string>
#include <string_view>

#include "rt/graph.hpp"

namespace rt {

/// Encode to the standard graph6 line (without trailing newline).
std::string to_graph6(const Graph& g);

/// Decode one graph6 line. Throws std::invalid_argument on malformed input
/// or when the encoded graph exceeds 64 vertices.
Graph from_graph6(std::string_view line);

} // namespace rt
