#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nestkit {

using Edge = std::pair<int, int>;

/// Proper edge colouring with at most Δ+1 colours (Misra–Gries fan
/// rotation). colour[i] belongs to edges[i]; colours are 0..count-1.
struct EdgeColouring {
  std::vector<int> colour;
  int count = 0;
};

/// Simple graphs only; throws INVALID_INPUT on loops or repeated edges.
EdgeColouring colour_edges(int vertices, const std::vector<Edge>& edges);

/// Independent check: every edge coloured, no vertex sees a colour twice.
/// Returns a description of the first clash, or nullopt when proper.
std::optional<std::string> edge_colouring_clash(int vertices, const std::vector<Edge>& edges,
                                                const EdgeColouring& colouring);

int max_degree(int vertices, const std::vector<Edge>& edges);

}  // namespace nestkit
