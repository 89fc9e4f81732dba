#include <doctest.h>

#include "nestkit/direct.hpp"
#include "nestkit/edge_colouring.hpp"
#include "nestkit/error.hpp"
#include "nestkit/verify.hpp"
#include "support.hpp"

using namespace nestkit;
using namespace testing;

TEST_SUITE("direct") {
  TEST_CASE("weak pairs oracles") {
    for (auto [v, w] : {std::pair{5, 6}, {8, 10}, {7, 9}, {29, 36}}) {
      CAPTURE(v);
      auto dev = weak_nest_pairs(v);
      CHECK(dev.nesting.w() == w);
      CHECK(verify_bibd(dev.design).passed());
      CHECK(verify_weak_nesting(dev.design, dev.nesting).passed());
    }
  }

  TEST_CASE("weak pairs too small") {
    try {
      weak_nest_pairs(2);
      FAIL("expected V_TOO_SMALL");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::v_too_small);
    }
  }

  TEST_CASE("strongification") {
    auto five = strong_nest_pairs_1mod4(5);
    CHECK(five.nested.nesting.w() == 8);
    CHECK(five.colours == 3);  // odd cycle
    CHECK(strong_nest_pairs_1mod4(9).nested.nesting.w() == 14);
    auto thirteen = strong_nest_pairs_1mod4(13);
    CHECK(thirteen.nested.nesting.w() == 20);
    CHECK(verify_strong_nesting(thirteen.nested.design, thirteen.nested.nesting).passed());
    CHECK_THROWS_AS(strong_nest_pairs_1mod4(7), Error);
  }

  TEST_CASE("cyclic STS") {
    auto seven = cyclic_sts(7);
    CHECK(seven.bases.size() == 1);
    CHECK(verify_bibd(develop(seven).design).passed());
    auto thirteen = cyclic_sts(13);
    CHECK(thirteen.bases.size() == 2);
    CHECK(verify_bibd(develop(thirteen).design).passed());
    for (int v : {15, 19, 21, 25, 27, 31, 33, 37, 39, 43}) {
      CAPTURE(v);
      CHECK(verify_bibd(develop(cyclic_sts(v)).design).passed());
    }
    try {
      cyclic_sts(9);
      FAIL("expected NO_CYCLIC_STS");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::no_cyclic_sts);
    }
  }

  TEST_CASE("orbit nesting") {
    CHECK(nest_cyclic_orbits(cyclic_sts(7)).w() == 8);
    CHECK(nest_cyclic_orbits(cyclic_sts(13)).w() == 15);
    auto s15 = cyclic_sts(15);
    CHECK(orbit_count(s15) == 3);
    auto n15 = nest_cyclic_orbits(s15);
    CHECK(n15.w() == 18);
    CHECK(n15.assignment.size() == develop(s15).design.blocks.size());
  }

  TEST_CASE("examples shipped as fixtures") {
    auto e12s = fixture("E12strong");
    CHECK(e12s.design.blocks.size() == 44);
    CHECK(e12s.nesting->w() == 18);
    CHECK(verify_strong_nesting(e12s.design, *e12s.nesting).passed());
    auto e10 = fixture("E10");
    CHECK(verify_weak_nesting(e10.design, *e10.nesting).passed());
    CHECK(e10.nesting->w() == 12);
    CHECK(fixture("E9strong").nesting->w() == 14);
    CHECK_THROWS_AS(fixture("E99"), Error);
  }
}

TEST_SUITE("edge_colouring") {
  TEST_CASE("odd cycle needs three colours") {
    std::vector<Edge> c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    auto col = colour_edges(5, c5);
    CHECK(col.count == 3);
    CHECK_FALSE(edge_colouring_clash(5, c5, col));
  }

  TEST_CASE("complete graphs within Δ+1") {
    for (int n = 2; n <= 12; ++n) {
      std::vector<Edge> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      auto col = colour_edges(n, edges);
      CHECK(col.count <= max_degree(n, edges) + 1);
      CHECK_FALSE(edge_colouring_clash(n, edges, col));
    }
  }

  TEST_CASE("clash detection") {
    std::vector<Edge> path{{0, 1}, {1, 2}};
    EdgeColouring bad{{0, 0}, 1};
    CHECK(edge_colouring_clash(3, path, bad));
    CHECK_THROWS_AS(colour_edges(2, {{0, 0}}), Error);
  }
}
