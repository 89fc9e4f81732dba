#pragma once

#include <initializer_list>
#include <vector>

#include "nestkit/develop.hpp"
#include "nestkit/direct.hpp"
#include "nestkit/fixtures.hpp"
#include "nestkit/search.hpp"
#include "nestkit/types.hpp"

namespace testing {

using namespace nestkit;

inline Design make_design(int v, int k, int lambda, std::initializer_list<std::initializer_list<PointId>> blocks) {
  Design d;
  d.params = {v, k, lambda};
  d.universe = PointUniverse::plain(v);
  for (auto b : blocks) d.blocks.emplace_back(std::vector<PointId>(b));
  return d;
}

/// The (4,3,2)-BIBD: all triples of 4 points.
inline Design k4_triples() { return make_design(4, 3, 2, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

inline Design cyclic_sts7() {
  BaseBlockSystem s{7, 3, 1, false, {}, {}, {{{BaseEntry::residue(1), BaseEntry::residue(2), BaseEntry::residue(4)}, 0}}};
  return develop(s).design;
}

/// The perfectly nested STS(7): (1,2,4,0) developed mod 7.
inline Developed nested_sts7() {
  auto nested = nest_cyclic_base(cyclic_sts(7));
  return develop(*nested);
}

inline Design affine_plane_3() { return fixture("KTS9").design; }

}  // namespace testing
