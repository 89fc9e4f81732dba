#include "nestkit/levi.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nestkit/error.hpp"
#include "nestkit/verify.hpp"

namespace nestkit {

LeviGraph levi_graph(const Design& design) {
  LeviGraph g;
  g.points = design.v();
  g.blocks = static_cast<int>(design.blocks.size());
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    for (auto x : design.blocks[i]) g.edges.emplace_back(static_cast<int>(x), g.points + static_cast<int>(i));
  return g;
}

std::optional<std::string> harmonious_violation(const LeviGraph& graph, const HarmoniousColouring& colouring) {
  if (static_cast<int>(colouring.colour.size()) != graph.vertex_count())
    return "colouring has " + std::to_string(colouring.colour.size()) + " entries for " +
           std::to_string(graph.vertex_count()) + " vertices";
  for (int c : colouring.colour)
    if (c < 0 || c >= colouring.palette) return "colour " + std::to_string(c) + " outside the palette";
  std::map<std::pair<int, int>, std::pair<int, int>> seen;
  for (auto [a, b] : graph.edges) {
    int ca = colouring.colour[a], cb = colouring.colour[b];
    if (ca == cb) return "edge {" + std::to_string(a) + "," + std::to_string(b) + "} has both ends coloured " +
                         std::to_string(ca);
    auto key = std::minmax(ca, cb);
    auto [it, fresh] = seen.emplace(key, std::pair{a, b});
    if (!fresh)
      return "colour pair {" + std::to_string(key.first) + "," + std::to_string(key.second) + "} on edges {" +
             std::to_string(it->second.first) + "," + std::to_string(it->second.second) + "} and {" +
             std::to_string(a) + "," + std::to_string(b) + "}";
  }
  return std::nullopt;
}

HarmoniousColouring nesting_to_colouring(const Design& design, const Nesting& nesting) {
  auto cert = verify_strong_nesting(design, nesting);
  if (!cert.passed()) {
    std::string why = "nesting is not strong";
    for (const auto& c : cert.checks)
      if (!c.passed) {
        why += ": " + c.name + " (" + c.witness + ")";
        break;
      }
    throw Error(ErrorCode::not_strong, why);
  }
  HarmoniousColouring out;
  out.palette = nesting.w();
  for (int x = 0; x < design.v(); ++x) out.colour.push_back(x);
  for (auto p : nesting.assignment) out.colour.push_back(static_cast<int>(p));
  if (!nesting.universe.labels.empty()) out.labels = nesting.universe.labels;
  return out;
}

Nesting colouring_to_nesting(const Design& design, const HarmoniousColouring& colouring) {
  auto graph = levi_graph(design);
  if (auto bad = harmonious_violation(graph, colouring)) throw Error(ErrorCode::not_harmonious, *bad);
  const int v = design.v();
  std::map<int, int> rename;
  for (int x = 0; x < v; ++x) {
    auto [it, fresh] = rename.emplace(colouring.colour[x], x);
    if (!fresh)
      throw Error(ErrorCode::not_harmonious, "points " + std::to_string(it->second) + " and " + std::to_string(x) +
                                                 " share colour " + std::to_string(colouring.colour[x]));
  }
  std::set<int> rest;
  for (std::size_t i = v; i < colouring.colour.size(); ++i)
    if (!rename.count(colouring.colour[i])) rest.insert(colouring.colour[i]);
  int next = v;
  for (int c : rest) rename.emplace(c, next++);

  Nesting n;
  n.universe.size = next;
  n.universe.old_count = v;
  if (!colouring.labels.empty()) {
    n.universe.labels.resize(next);
    for (auto [c, id] : rename)
      n.universe.labels[id] = c < static_cast<int>(colouring.labels.size()) ? colouring.labels[c] : std::to_string(id);
  }
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    n.assignment.push_back(static_cast<PointId>(rename.at(colouring.colour[v + i])));

  auto cert = verify_strong_nesting(design, n);
  if (!cert.passed())
    throw Error(ErrorCode::contract_violation, "harmonious colouring did not yield a strong nesting");
  return n;
}

bool is_exact_colouring(const Design& design, const HarmoniousColouring& colouring) {
  auto graph = levi_graph(design);
  if (harmonious_violation(graph, colouring)) return false;
  std::set<int> used(colouring.colour.begin(), colouring.colour.end());
  const long long w = static_cast<long long>(used.size());
  return static_cast<long long>(graph.edges.size()) == w * (w - 1) / 2;
}

}  // namespace nestkit
