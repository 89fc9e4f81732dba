// Randomized invariants. Seeds are fixed so failures reproduce.

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "nestkit/io.hpp"
#include "nestkit/levi.hpp"
#include "nestkit/pairs.hpp"
#include "nestkit/recursive.hpp"
#include "nestkit/search.hpp"
#include "nestkit/verify.hpp"
#include "support.hpp"

using namespace nestkit;
using namespace testing;

namespace {

std::vector<Block> random_blocks(std::mt19937_64& rng, int w) {
  std::uniform_int_distribution<int> count(0, 12), size(2, std::min(w, 5));
  std::vector<PointId> pts(w);
  std::iota(pts.begin(), pts.end(), 0);
  std::vector<Block> out;
  for (int i = count(rng); i > 0; --i) {
    std::shuffle(pts.begin(), pts.end(), rng);
    out.emplace_back(std::vector<PointId>(pts.begin(), pts.begin() + size(rng)));
  }
  return out;
}

/// Relabels the old points of a nested design by `perm`.
std::pair<Design, Nesting> relabel(const Design& d, const Nesting& n, const std::vector<PointId>& perm) {
  Design out = d;
  Nesting m = n;
  auto map = [&](PointId p) { return static_cast<int>(p) < d.v() ? perm[p] : p; };
  for (auto& b : out.blocks) {
    std::vector<PointId> pts;
    for (auto p : b) pts.push_back(map(p));
    b = Block(std::move(pts));
  }
  for (auto& p : m.assignment) p = map(p);
  out.universe.labels.clear();
  m.universe.labels.clear();
  return {out, m};
}

}  // namespace

TEST_SUITE("property") {
  TEST_CASE("pair counts are invariant under point permutations") {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> wdist(2, 14);
    int checks = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const int w = wdist(rng);
      auto blocks = random_blocks(rng, w);
      std::vector<PointId> perm(w);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Block> moved;
      for (const auto& b : blocks) {
        std::vector<PointId> pts;
        for (auto p : b) pts.push_back(perm[p]);
        moved.emplace_back(std::move(pts));
      }
      auto a = pair_counts(blocks, w);
      auto b = pair_counts(moved, w);
      bool same = a.total() == b.total();
      for (PointId x = 0; same && static_cast<int>(x) < w; ++x)
        for (PointId y = x + 1; same && static_cast<int>(y) < w; ++y) same = a.get(x, y) == b.get(perm[x], perm[y]);
      CHECK(same);
      ++checks;
    }
    CHECK(checks == 10000);
  }

  TEST_CASE("verification is invariant under relabelling old points") {
    std::mt19937_64 rng(7);
    for (const char* name : {"E4strong", "E7strong", "E9strong", "E10", "E12strong"}) {
      auto fx = fixture(name);
      const auto before = classify(fx.design, *fx.nesting).classification;
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<PointId> perm(fx.design.v());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto [d, n] = relabel(fx.design, *fx.nesting, perm);
        CHECK(classify(d, n).classification == before);
      }
    }
  }

  TEST_CASE("serialization round trips on generated designs") {
    for (int v = 4; v <= 60; ++v) {
      auto dev = weak_nest_pairs(v);
      auto text = save_design(dev.design, &dev.nesting);
      auto back = load_design(text);
      CHECK(back.design == dev.design);
      CHECK(back.nesting == dev.nesting);
      CHECK(save_design(back.design, &*back.nesting) == text);
      CHECK(load_nesting(save_nesting(dev.nesting)) == dev.nesting);
      auto cert = verify_nesting(dev.design, dev.nesting, Mode::weak);
      CHECK(load_certificate(save_certificate(cert)) == cert);
    }
    for (int v = 5; v <= 41; v += 4) {
      auto sp = strong_nest_pairs_1mod4(v);
      auto c = nesting_to_colouring(sp.nested.design, sp.nested.nesting);
      CHECK(load_colouring(save_colouring(c, v)) == c);
      CHECK(colouring_to_nesting(sp.nested.design, c) == sp.nested.nesting);
    }
  }

  TEST_CASE("search output does not depend on the thread count") {
    std::vector<std::pair<Design, Mode>> cases{{k4_triples(), Mode::weak},
                                               {k4_triples(), Mode::strong},
                                               {cyclic_sts7(), Mode::minimal},
                                               {fixture("strongE6").design, Mode::strong},
                                               {fixture("strongE6").design, Mode::weak},
                                               {affine_plane_3(), Mode::weak}};
    for (const auto& [design, mode] : cases) {
      CAPTURE(to_string(mode));
      const int cap = design.v() + static_cast<int>(design.blocks.size());
      SearchOptions one, four;
      four.threads = 4;
      auto a = find_min_nesting(design, mode, cap, one);
      auto b = find_min_nesting(design, mode, cap, four);
      CHECK(a.status == b.status);
      CHECK(a.nesting == b.nesting);
      if (a.nesting) CHECK(save_nesting(*a.nesting) == save_nesting(*b.nesting));
    }
  }

  TEST_CASE("symmetry breaking agrees with the plain search") {
    // every design here has at most 8 blocks
    std::vector<Design> designs{k4_triples(), cyclic_sts7(), make_design(3, 2, 1, {{0, 1}, {0, 2}, {1, 2}}),
                                make_design(4, 2, 1, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})};
    for (const auto& d : designs)
      for (Mode mode : {Mode::weak, Mode::strong}) {
        const int cap = d.v() + static_cast<int>(d.blocks.size());
        SearchOptions plain;
        plain.symmetry_breaking = false;
        auto a = find_min_nesting(d, mode, cap);
        auto b = find_min_nesting(d, mode, cap, plain);
        CHECK(a.status == b.status);
        REQUIRE(a.nesting);
        REQUIRE(b.nesting);
        CHECK(a.nesting->w() == b.nesting->w());
      }
  }

  TEST_CASE("exhaustion is monotone in the cap") {
    for (Mode mode : {Mode::weak, Mode::strong}) {
      int first_found = 0;
      for (int cap = 4; cap <= 9; ++cap) {
        auto r = find_min_nesting(k4_triples(), mode, cap);
        if (r.status == SearchStatus::found) {
          if (!first_found) first_found = cap;
          CHECK(r.nesting->w() == first_found);
        } else {
          CHECK_FALSE(first_found);
        }
      }
      CHECK(first_found == lower_bound(4, 3, 2, mode));
    }
  }

  TEST_CASE("search never beats the lower bound") {
    using Case = std::tuple<Design, int, int>;
    for (const auto& [d, k, l] : {Case{k4_triples(), 3, 2}, Case{fixture("strongE6").design, 3, 2}, Case{cyclic_sts7(), 3, 1}})
      for (Mode mode : {Mode::weak, Mode::strong}) {
        auto r = find_min_nesting(d, mode, d.v() + static_cast<int>(d.blocks.size()));
        REQUIRE(r.nesting);
        CHECK(r.nesting->w() >= lower_bound(d.v(), k, l, mode));
      }
  }

  TEST_CASE("pipelines are reproducible") {
    for (int v : {15, 24, 28}) {
      auto a = pipeline(v, Mode::weak);
      auto b = pipeline(v, Mode::weak);
      canonicalize(a.design, &a.nesting);
      canonicalize(b.design, &b.nesting);
      CHECK(save_design(a.design, &a.nesting) == save_design(b.design, &b.nesting));
      CHECK(save_certificate(a.certificate) == save_certificate(b.certificate));
    }
  }
}
