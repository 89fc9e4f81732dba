#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestkit/types.hpp"

namespace nestkit {

/// Point vertices 0..v-1, block vertex of block i is v+i; one edge {x, A}
/// per incidence, listed block by block.
struct LeviGraph {
  int points = 0;
  int blocks = 0;
  std::vector<std::pair<int, int>> edges;

  int vertex_count() const { return points + blocks; }
};

struct HarmoniousColouring {
  std::vector<int> colour;          // per Levi vertex
  int palette = 0;                  // colours are 0..palette-1
  std::vector<std::string> labels;  // optional display names per colour

  friend bool operator==(const HarmoniousColouring&, const HarmoniousColouring&) = default;
};

LeviGraph levi_graph(const Design& design);

/// First violation (improper edge or repeated colour pair), or nullopt.
std::optional<std::string> harmonious_violation(const LeviGraph& graph, const HarmoniousColouring& colouring);

/// c(x) = x on points, c(A) = φ(A). Throws NOT_STRONG unless the nesting
/// verifies strong.
HarmoniousColouring nesting_to_colouring(const Design& design, const Nesting& nesting);

/// Renames colours so point x gets colour x and the remaining colours follow
/// in increasing order, then reads φ(A) = c(A). Throws NOT_HARMONIOUS.
Nesting colouring_to_nesting(const Design& design, const HarmoniousColouring& colouring);

/// Every pair of used colours appears on exactly one edge.
bool is_exact_colouring(const Design& design, const HarmoniousColouring& colouring);

}  // namespace nestkit
