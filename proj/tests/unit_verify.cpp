#include <doctest.h>

#include "nestkit/bounds.hpp"
#include "nestkit/error.hpp"
#include "nestkit/pairs.hpp"
#include "nestkit/verify.hpp"
#include "support.hpp"

using namespace nestkit;
using namespace testing;

namespace {

Design underlying(const std::string& name) { return fixture(name).design; }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("developed (0,1,3) mod 7 is a (7,3,1)-BIBD") {
    auto d = make_design(7, 3, 1, {});
    for (PointId i = 0; i < 7; ++i) d.blocks.push_back(Block{i, (i + 1) % 7, (i + 3) % 7});
    CHECK(verify_bibd(d).passed());
  }

  TEST_CASE("the (6,3,2) design on Z5 ∪ {∞}") {
    auto d = underlying("strongE6");
    CHECK(d.blocks.size() == 10);
    CHECK(verify_bibd(d).passed());
    d.blocks[1] = d.blocks[0];
    auto cert = verify_bibd(d);
    CHECK_FALSE(cert.passed());
    const auto* c = cert.find("pair-balance");
    REQUIRE(c);
    CHECK_FALSE(c->passed);
    CHECK_FALSE(c->witness.empty());
  }

  TEST_CASE("partial BIBD caps") {
    auto fx = fixture("E4");
    auto aug = augment(fx.design, *fx.nesting);
    CHECK(verify_partial(aug.blocks, 5, 3).passed);
    CHECK_FALSE(verify_partial(aug.blocks, 5, 2).passed);
    auto d = k4_triples();
    CHECK(verify_partial(d.blocks, 4, 2).passed);
  }

  TEST_CASE("GDD from AG(2,3) minus one class") {
    auto kts = affine_plane_3();
    REQUIRE(kts.resolution);
    Design g = kts;
    const auto& first = kts.resolution->classes[0].blocks;
    std::vector<Group> groups;
    std::vector<Block> rest;
    for (std::size_t i = 0; i < kts.blocks.size(); ++i) {
      if (std::find(first.begin(), first.end(), i) != first.end())
        groups.push_back(Group(kts.blocks[i].begin(), kts.blocks[i].end()));
      else
        rest.push_back(kts.blocks[i]);
    }
    g.blocks = rest;
    g.groups = groups;
    g.resolution.reset();
    CHECK(verify_gdd(g).passed());
    CHECK(group_type(groups) == "3^3");
  }

  TEST_CASE("a single group holding every point fails") {
    auto d = k4_triples();
    d.groups = std::vector<Group>{{0, 1, 2, 3}};
    CHECK_FALSE(verify_gdd(d).passed());
  }

  TEST_CASE("nested GDD 2^4 ingredient") {
    auto fx = fixture("nested-GDD-2^4");
    CHECK(verify_gdd_nesting(fx.design, *fx.nesting).passed());
  }

  TEST_CASE("resolutions") {
    CHECK(verify_resolution(affine_plane_3()).passed);
    auto frame = fixture("frame-2^4").design;
    CHECK(verify_resolution(frame).passed);
    REQUIRE(frame.resolution);
    CHECK(frame.resolution->classes.size() == 4);  // |X|/2 holey classes
    auto broken = affine_plane_3();
    auto& cls = broken.resolution->classes;
    cls[1].blocks.push_back(cls[0].blocks.back());
    cls[0].blocks.pop_back();
    CHECK_FALSE(verify_resolution(broken).passed);
  }

  TEST_CASE("weak nesting checks") {
    auto e4 = fixture("E4");
    auto cert = verify_weak_nesting(e4.design, *e4.nesting);
    CHECK(cert.passed());
    CHECK(cert.w == 5);
    auto e7 = fixture("E7");
    CHECK(verify_weak_nesting(e7.design, *e7.nesting).passed());
    CHECK(e7.nesting->w() == 8);
    Nesting bad{PointUniverse::plain(4), {0, 0, 0, 0}};
    CHECK_FALSE(verify_weak_nesting(e4.design, bad).passed());
  }

  TEST_CASE("strong nesting checks") {
    auto e4s = fixture("E4strong");
    CHECK(verify_strong_nesting(e4s.design, *e4s.nesting).passed());
    auto e4 = fixture("E4");
    auto cert = verify_strong_nesting(e4.design, *e4.nesting);
    CHECK_FALSE(cert.passed());
    const auto* c = cert.find("nested-pairs-distinct");
    REQUIRE(c);
    CHECK(c->witness.find("{1,∞1}") != std::string::npos);
    auto e10s = fixture("E10strong");
    CHECK(verify_strong_nesting(e10s.design, *e10s.nesting).passed());
    CHECK(e10s.nesting->w() == 16);
  }

  TEST_CASE("classification") {
    auto sts = nested_sts7();
    auto c = classify(sts.design, sts.nesting).classification;
    CHECK(c.weak);
    CHECK(c.strong);
    CHECK(c.minimal);
    CHECK(c.perfect);
    auto s = classify(fixture("E4strong").design, *fixture("E4strong").nesting).classification;
    CHECK(s == Classification{true, true, false, false});
    auto w = classify(fixture("E4").design, *fixture("E4").nesting).classification;
    CHECK(w == Classification{true, false, false, false});
  }

  TEST_CASE("minimal mode requires w = v") {
    auto e4s = fixture("E4strong");
    CHECK_FALSE(verify_nesting(e4s.design, *e4s.nesting, Mode::minimal).passed());
    auto sts = nested_sts7();
    CHECK(verify_nesting(sts.design, sts.nesting, Mode::minimal).passed());
  }

  TEST_CASE("every fixture verifies its own claim") {
    for (const auto& name : fixture_names()) {
      CAPTURE(name);
      CHECK(verify_fixture(fixture(name)).passed());
    }
  }
}

TEST_SUITE("bounds") {
  TEST_CASE("minimal feasibility") {
    CHECK(minimal_nesting_feasible(3, 1));
    CHECK_FALSE(minimal_nesting_feasible(3, 2));
    CHECK(minimal_nesting_feasible(5, 2));
  }

  TEST_CASE("perfect necessity") {
    CHECK(perfect_nesting_necessary(7, 3));
    CHECK_FALSE(perfect_nesting_necessary(9, 3));
    CHECK_FALSE(perfect_nesting_necessary(13, 4));
  }

  TEST_CASE("weak bound") {
    CHECK(weak_lower_bound(5, 2, 1) == 6);
    CHECK(weak_lower_bound(10, 3, 2) == 12);
    CHECK(weak_lower_bound(7, 3, 1) == 7);
  }

  TEST_CASE("strong bound") {
    CHECK(strong_lower_bound(4, 3, 2) == 7);
    CHECK(strong_lower_bound(9, 3, 2) == 14);
    CHECK(strong_lower_bound(6, 2, 1) == 9);
    CHECK(strong_lower_bound(10, 3, 2) == 16);
    CHECK(strong_lower_bound(6, 3, 2) == 9);  // the formula; 11 comes from search
  }

  TEST_CASE("inadmissible parameters") {
    CHECK_THROWS_AS(weak_bound(8, 3, 2), Error);
    CHECK_THROWS_AS(strong_bound(5, 3, 1), Error);
  }

  TEST_CASE("check_optimal") {
    auto e7 = fixture("E7");
    auto cert = check_optimal(verify_nesting(e7.design, *e7.nesting, Mode::weak), Mode::weak);
    REQUIRE(cert.bound);
    CHECK(cert.bound->value == 8);
    CHECK(cert.bound->met);
    auto e4s = fixture("E4strong");
    cert = check_optimal(verify_nesting(e4s.design, *e4s.nesting, Mode::strong), Mode::strong);
    CHECK(cert.bound->met);
  }

  TEST_CASE("certified bound raises the formula") {
    auto fx = fixture("strongE6");
    auto plain = check_optimal(verify_nesting(fx.design, *fx.nesting, Mode::strong), Mode::strong);
    CHECK(plain.bound->value == 9);
    CHECK_FALSE(plain.bound->met);
    std::vector<CertifiedBound> extra{{{6, 3, 2}, Mode::strong, 11, "test"}};
    auto raised = check_optimal(verify_nesting(fx.design, *fx.nesting, Mode::strong), Mode::strong, extra);
    CHECK(raised.bound->value == 11);
    CHECK(raised.bound->met);
  }

  // Lower-bound columns of the summary tables, t up to 1000.
  TEST_CASE("weak table rows") {
    for (int t = 1; t <= 1000; ++t) {
      CAPTURE(t);
      CHECK(weak_lower_bound(4 * t, 2, 1) == 5 * t);
      CHECK(weak_lower_bound(4 * t + 1, 2, 1) == 5 * t + 1);
      CHECK(weak_lower_bound(4 * t + 2, 2, 1) == 5 * t + 3);
      CHECK(weak_lower_bound(4 * t + 3, 2, 1) == 5 * t + 4);
      CHECK(weak_lower_bound(6 * t + 3, 3, 2) == 7 * t + 4);
      CHECK(weak_lower_bound(6 * t + 1, 3, 2) == 7 * t + 1);
      CHECK(weak_lower_bound(6 * t, 3, 2) == 7 * t);
      CHECK(weak_lower_bound(12 * t + 4, 3, 2) == 14 * t + 5);
      CHECK(weak_lower_bound(12 * t + 10, 3, 2) == 14 * t + 12);
    }
    CHECK(weak_lower_bound(4, 3, 2) == 5);
    CHECK(weak_lower_bound(10, 3, 2) == 12);
  }

  TEST_CASE("strong table rows") {
    for (int t = 1; t <= 1000; ++t) {
      CAPTURE(t);
      CHECK(strong_lower_bound(6 * t + 3, 3, 2) == 9 * t + 5);
      CHECK(strong_lower_bound(6 * t + 1, 3, 2) == 9 * t + 2);
      CHECK(strong_lower_bound(6 * t, 3, 2) == 9 * t);
      CHECK(strong_lower_bound(12 * t, 3, 2) == 18 * t);
      CHECK(strong_lower_bound(12 * t + 4, 3, 2) == 18 * t + 7);
      CHECK(strong_lower_bound(12 * t + 10, 3, 2) == 18 * t + 16);
    }
    CHECK(strong_lower_bound(4, 3, 2) == 7);
    CHECK(strong_lower_bound(7, 3, 2) == 11);
    CHECK(strong_lower_bound(10, 3, 2) == 16);
    CHECK(strong_lower_bound(12, 3, 2) == 18);
    CHECK(lower_bound(6, 3, 2, Mode::strong) == 9);
  }
}
