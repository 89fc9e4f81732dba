#include "nestkit/pairs.hpp"

#include <numeric>

#include "nestkit/error.hpp"

namespace nestkit {

PairCountTable::PairCountTable(int w)
    : w_(w), counts_(w > 1 ? static_cast<std::size_t>(w) * (w - 1) / 2 : 0, 0) {}

long long PairCountTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0LL);
}

PairCountTable pair_counts(std::span<const Block> blocks, int w) {
  PairCountTable table(w);
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (static_cast<int>(b[i]) >= w)
        throw Error(ErrorCode::invalid_input, "point " + std::to_string(b[i]) + " outside universe of size " +
                                                  std::to_string(w));
      for (std::size_t j = i + 1; j < b.size(); ++j) table.add(b[i], b[j]);
    }
  }
  return table;
}

Design augment(const Design& design, const Nesting& nesting) {
  if (nesting.assignment.size() != design.blocks.size())
    throw Error(ErrorCode::invalid_input, "nesting covers " + std::to_string(nesting.assignment.size()) +
                                              " blocks, design has " + std::to_string(design.blocks.size()));
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    if (design.blocks[i].contains(nesting.assignment[i])) inside.push_back(i);
  if (!inside.empty()) {
    std::string list;
    for (auto i : inside) list += (list.empty() ? "" : ",") + std::to_string(i);
    throw Error(ErrorCode::nested_point_inside_block, "nested point lies inside block(s) " + list, inside);
  }
  Design out;
  out.params = DesignParams{nesting.universe.size, design.params.k + 1, design.params.lambda + 1};
  out.universe = nesting.universe;
  out.blocks.reserve(design.blocks.size());
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    std::vector<PointId> pts(design.blocks[i].begin(), design.blocks[i].end());
    pts.push_back(nesting.assignment[i]);
    out.blocks.emplace_back(std::move(pts));
  }
  out.groups = design.groups;
  return out;
}

}  // namespace nestkit
