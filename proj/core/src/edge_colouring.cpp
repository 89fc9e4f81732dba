#include "nestkit/edge_colouring.hpp"

#include <algorithm>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edge_coloring.hpp>

#include "nestkit/error.hpp"

namespace nestkit {

int max_degree(int vertices, const std::vector<Edge>& edges) {
  std::vector<int> deg(vertices, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

EdgeColouring colour_edges(int vertices, const std::vector<Edge>& edges) {
  std::vector<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= vertices || b >= vertices)
      throw Error(ErrorCode::invalid_input, "edge colouring needs a simple graph on 0..n-1");
    seen.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw Error(ErrorCode::invalid_input, "edge colouring needs a simple graph (repeated edge)");

  // Boost's edge_coloring is Misra–Gries: at most Δ+1 colours.
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property, std::size_t>;
  Graph g(vertices);
  std::vector<Graph::edge_descriptor> handles;
  for (auto [a, b] : edges) handles.push_back(boost::add_edge(a, b, g).first);
  boost::edge_coloring(g, boost::get(boost::edge_bundle, g));

  EdgeColouring out;
  for (auto e : handles) {
    const int c = static_cast<int>(g[e]);
    out.colour.push_back(c);
    out.count = std::max(out.count, c + 1);
  }
  if (out.count > max_degree(vertices, edges) + 1)
    throw Error(ErrorCode::contract_violation, "edge colouring used more than Δ+1 colours");
  return out;
}

std::optional<std::string> edge_colouring_clash(int vertices, const std::vector<Edge>& edges,
                                                const EdgeColouring& colouring) {
  if (colouring.colour.size() != edges.size()) return "colouring does not cover every edge";
  std::vector<std::vector<int>> seen(vertices);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int c = colouring.colour[i];
    if (c < 0 || c >= colouring.count) return "edge " + std::to_string(i) + " has no valid colour";
    for (int u : {edges[i].first, edges[i].second}) {
      if (std::find(seen[u].begin(), seen[u].end(), c) != seen[u].end())
        return "vertex " + std::to_string(u) + " sees colour " + std::to_string(c) + " twice";
      seen[u].push_back(c);
    }
  }
  return std::nullopt;
}

}  // namespace nestkit
