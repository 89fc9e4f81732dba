#include "nestkit/direct.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>

#include "nestkit/error.hpp"

namespace nestkit {

namespace {

BaseBlock pair_base(BaseEntry a, BaseEntry b, BaseEntry nested) { return BaseBlock{{a, b, nested}, 0}; }
BaseEntry R(int r, int m) { return BaseEntry::residue(((r % m) + m) % m); }
std::string inf(int j) { return "∞" + std::to_string(j); }

}  // namespace

BaseBlockSystem weak_pairs_system(int v) {
  if (v < 4) throw Error(ErrorCode::v_too_small, "pair nestings need v >= 4");
  BaseBlockSystem s;
  s.k = 2;
  s.lambda = 1;
  const int c = v % 4;
  if ((c == 1 && v < 5) || (c == 3 && v < 7) || (c == 2 && v < 6))
    throw Error(ErrorCode::v_too_small, "no base-block family for v = " + std::to_string(v));

  auto new_points = [&](int count) {
    for (int j = 1; j <= count; ++j) s.fixed_points.push_back({inf(j), false});
  };
  if (c == 1) {
    const int t = (v - 1) / 4, m = v;
    s.modulus = m;
    new_points(t);
    for (int j = 1; j <= t; ++j) s.bases.push_back(pair_base(R(0, m), R(2 * j, m), BaseEntry::fixed(inf(j))));
    for (int j = 0; j < t; ++j) s.bases.push_back(pair_base(R(0, m), R(2 * j + 1, m), R(2 * t - 2 * j, m)));
  } else if (c == 3) {
    const int t = (v - 3) / 4, m = v;
    s.modulus = m;
    new_points(t + 1);
    for (int j = 1; j <= t; ++j) s.bases.push_back(pair_base(R(0, m), R(2 * j, m), BaseEntry::fixed(inf(j))));
    s.bases.push_back(pair_base(R(0, m), R(1, m), BaseEntry::fixed(inf(t + 1))));
    for (int j = 1; j <= t; ++j) s.bases.push_back(pair_base(R(0, m), R(2 * j + 1, m), R(2 * t + 2 - 2 * j, m)));
  } else {
    // Even v: Z_{v-1} ∪ {∞}, ∞ an old point.
    const int t = v / 4;
    const int m = v - 1;
    const int infinite_nested = c == 0 ? t : t + 1;
    s.modulus = m;
    s.fixed_points.push_back({"∞", true});
    new_points(infinite_nested);
    for (int j = 1; j <= infinite_nested; ++j)
      s.bases.push_back(pair_base(R(0, m), R(2 * j, m), BaseEntry::fixed(inf(j))));
    s.bases.push_back(pair_base(BaseEntry::fixed("∞"), R(0, m), R(2 * t - 1, m)));
    for (int j = 1; j <= t - 1; ++j) s.bases.push_back(pair_base(R(0, m), R(2 * j - 1, m), R(t + j - 1, m)));
  }
  return s;
}

Developed weak_nest_pairs(int v) { return develop(weak_pairs_system(v)); }

StrongPairs strong_nest_pairs_1mod4(int v) {
  if (v % 4 != 1) throw Error(ErrorCode::invalid_input, "strongification needs v ≡ 1 mod 4");
  Developed weak = weak_nest_pairs(v);
  const auto& d = weak.design;
  auto& n = weak.nesting;

  std::vector<Edge> edges;
  std::vector<std::size_t> edge_block;
  for (std::size_t i = 0; i < d.blocks.size(); ++i)
    if (!n.universe.is_old(n.assignment[i])) {
      edges.emplace_back(static_cast<int>(d.blocks[i][0]), static_cast<int>(d.blocks[i][1]));
      edge_block.push_back(i);
    }
  EdgeColouring colouring = colour_edges(v, edges);
  if (auto clash = edge_colouring_clash(v, edges, colouring))
    throw Error(ErrorCode::contract_violation, "edge colouring is not proper: " + *clash);
  if (colouring.count > max_degree(v, edges) + 1)
    throw Error(ErrorCode::contract_violation, "edge colouring used more than Δ+1 colours");

  StrongPairs out;
  out.colours = colouring.count;
  out.nested.design = d;
  Nesting strong;
  strong.universe.old_count = v;
  strong.universe.size = v + colouring.count;
  strong.universe.labels.assign(n.universe.labels.begin(), n.universe.labels.begin() + v);
  for (int c = 0; c < colouring.count; ++c) strong.universe.labels.push_back(inf(c + 1));
  strong.assignment = n.assignment;
  for (std::size_t e = 0; e < edges.size(); ++e)
    strong.assignment[edge_block[e]] = static_cast<PointId>(v + colouring.colour[e]);
  out.nested.nesting = std::move(strong);
  return out;
}

namespace {

// Skolem sequence of order n (hooked: positions 1..2n+1 with 2n empty).
// Returns pairs (a_i, b_i) with b_i - a_i = i, indexed by i.
std::optional<std::vector<std::pair<int, int>>> skolem(int n, bool hooked) {
  const int len = hooked ? 2 * n + 1 : 2 * n;
  std::vector<int> seq(len + 1, 0);
  if (hooked) seq[2 * n] = -1;
  std::vector<std::pair<int, int>> pairs(n + 1);
  std::function<bool(int)> place = [&](int i) {
    if (i == 0) return true;
    for (int a = 1; a + i <= len; ++a) {
      int b = a + i;
      if (seq[a] == 0 && seq[b] == 0) {
        seq[a] = seq[b] = i;
        pairs[i] = {a, b};
        if (place(i - 1)) return true;
        seq[a] = seq[b] = 0;
      }
    }
    return false;
  };
  if (!place(n)) return std::nullopt;
  return pairs;
}

std::optional<std::vector<std::array<int, 2>>> difference_triples(int v) {
  // Partition {1..(v-1)/2} minus {v/3} into {a, b, c} with a+b = c or a+b+c = v.
  std::set<int> left;
  for (int d = 1; d <= (v - 1) / 2; ++d)
    if (d != v / 3) left.insert(d);
  std::vector<std::array<int, 2>> out;
  std::function<bool()> rec = [&]() {
    if (left.empty()) return true;
    int a = *left.begin();
    left.erase(a);
    std::vector<int> options(left.begin(), left.end());
    for (int b : options) {
      for (int c : {a + b, v - a - b}) {
        if (c == b || !left.count(c)) continue;
        left.erase(b);
        left.erase(c);
        out.push_back({a, b});
        if (rec()) return true;
        out.pop_back();
        left.insert(b);
        left.insert(c);
      }
    }
    left.insert(a);
    return false;
  };
  if (!rec()) return std::nullopt;
  return out;
}

}  // namespace

BaseBlockSystem cyclic_sts(int v) {
  if (v == 9 || v < 7 || (v % 6 != 1 && v % 6 != 3))
    throw Error(ErrorCode::no_cyclic_sts, "no cyclic STS(" + std::to_string(v) + ")");
  BaseBlockSystem s;
  s.modulus = v;
  s.k = 3;
  s.lambda = 1;
  s.nested = false;
  auto base = [&](int a, int b, int c, int orbit = 0) {
    s.bases.push_back(BaseBlock{{R(a, v), R(b, v), R(c, v)}, orbit});
  };
  if (v % 6 == 1) {
    const int n = (v - 1) / 6;
    auto pairs = skolem(n, n % 4 == 2 || n % 4 == 3);
    if (!pairs) throw Error(ErrorCode::contract_violation, "no Skolem sequence of order " + std::to_string(n));
    for (int i = 1; i <= n; ++i) base(0, i, (*pairs)[i].second + n);
  } else {
    base(0, v / 3, 2 * v / 3, v / 3);
    auto triples = difference_triples(v);
    if (!triples) throw Error(ErrorCode::contract_violation, "no difference triples for " + std::to_string(v));
    for (auto [a, b] : *triples) base(0, a, a + b);
  }
  return s;
}

int orbit_count(const BaseBlockSystem& system) { return static_cast<int>(system.bases.size()); }

Nesting nest_cyclic_orbits(const BaseBlockSystem& system) {
  BaseBlockSystem nested = system;
  if (nested.nested) {
    for (auto& b : nested.bases) b.entries.pop_back();
  }
  nested.nested = true;
  for (std::size_t i = 0; i < nested.bases.size(); ++i) {
    nested.fixed_points.push_back({inf(static_cast<int>(i) + 1), false});
    nested.bases[i].entries.push_back(BaseEntry::fixed(inf(static_cast<int>(i) + 1)));
  }
  return develop(nested).nesting;
}

}  // namespace nestkit
