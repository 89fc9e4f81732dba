#include <doctest.h>

#include <filesystem>

#include "nestkit/error.hpp"
#include "nestkit/io.hpp"
#include "nestkit/recursive.hpp"
#include "nestkit/verify.hpp"
#include "support.hpp"

using namespace nestkit;
using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("nestkit-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::contract_violation;
}

}  // namespace

TEST_SUITE("recursive") {
  TEST_CASE("request names") {
    CHECK(nested_gdd_request("3^5").name == "nested-GDD-3^5");
    CHECK(master_gdd_request("2^6 5^1").name == "GDD4-2^6_5^1");
    CHECK(kts_request(15).name == "KTS15");
    CHECK(hanani_request(19).name == "hanani-TS-19");
  }

  TEST_CASE("class assignment") {
    Resolution r;
    r.classes.resize(6);
    auto a = assign_classes(r, 3);
    CHECK(a.points == 2);
    CHECK(a.load(0) == 3);
    auto one = assign_classes(r, 1);
    CHECK(one.points == 6);
    // frame with 4 holes, 2 holey classes per hole, cap 1, dedicated holes
    Resolution f;
    for (int h = 0; h < 4; ++h)
      for (int q = 0; q < 2; ++q) f.classes.push_back({{}, h});
    auto d = assign_classes(f, 1, {0, 1, 2, 3});
    CHECK(d.points == 8);
    CHECK(d.hole_points.at(2).size() == 2);
    CHECK_THROWS_AS(assign_classes(r, 0), Error);
  }

  TEST_CASE("weighting a 2^7 master") {
    auto master = fixture("GDD4-2^7").design;
    auto out = wfc_weight(master, 2, {});
    CHECK(group_type(*out.design.groups) == "4^7");
    CHECK(verify_gdd_nesting(out.design, out.nesting).passed());
  }

  TEST_CASE("empty master") {
    Design master;
    master.params = {0, 4, 1};
    master.groups = std::vector<Group>{};
    auto out = wfc_weight(master, 2, {});
    CHECK(out.design.blocks.empty());
    CHECK(out.nesting.assignment.empty());
  }

  TEST_CASE("frame from the 2^7 master") {
    auto frame = frame_construction(fixture("GDD4-2^7").design, 2, {});
    CHECK(group_type(*frame.groups) == "4^7");
    REQUIRE(frame.resolution);
    CHECK(frame.resolution->classes.size() == 14);
    CHECK(verify_resolution(frame).passed);
  }

  TEST_CASE("filler reuse is caught") {
    auto e4s = fixture("E4strong");
    Design d;
    d.params = {8, 3, 2};
    d.universe = PointUniverse::plain(8);
    Nesting n{PointUniverse::plain(11), {}};
    std::vector<Group> groups{{0, 1, 2, 3}};
    GroupFiller f{e4s.design, *e4s.nesting, {8, 9, 10}, "E4strong"};
    fill_groups(d, n, groups, {f}, Mode::strong);
    CHECK(d.blocks.size() == 4);
    CHECK(code_of([&] { fill_groups(d, n, groups, {f}, Mode::strong); }) == ErrorCode::illegal_reuse);
  }

  TEST_CASE("pipelines") {
    struct Case {
      int v;
      Mode mode;
      int w;
    };
    for (auto c : {Case{15, Mode::weak, 18}, Case{28, Mode::weak, 34}, Case{28, Mode::strong, 43},
                   Case{24, Mode::weak, 28}, Case{7, Mode::weak, 8}, Case{13, Mode::weak, 15},
                   Case{4, Mode::strong, 7}, Case{9, Mode::strong, 14}}) {
      CAPTURE(c.v);
      CAPTURE(to_string(c.mode));
      auto r = pipeline(c.v, c.mode);
      CHECK(r.nesting.w() == c.w);
      CHECK(r.plan.expected_w == c.w);
      CHECK(r.certificate.passed());
      CHECK(verify_nesting(r.design, r.nesting, c.mode).passed());
      CHECK_FALSE(r.certificate.provenance.empty());
    }
  }

  TEST_CASE("(28, weak) is one above the bound") {
    auto r = pipeline(28, Mode::weak);
    REQUIRE(r.certificate.bound);
    CHECK(r.certificate.bound->value == 33);
    CHECK_FALSE(r.certificate.bound->met);
  }

  TEST_CASE("unsupported and infeasible") {
    CHECK(code_of([] { pipeline(18, Mode::weak); }) == ErrorCode::unsupported_case);
    CHECK(code_of([] { pipeline(13, Mode::strong); }) == ErrorCode::unsupported_case);
    CHECK(code_of([] { pipeline(8, Mode::weak); }) == ErrorCode::infeasible_params);
    CHECK(code_of([] { pipeline(7, Mode::minimal); }) == ErrorCode::unsupported_case);
  }

  TEST_CASE("missing ingredients are named up front") {
    try {
      pipeline(34, Mode::weak);
      FAIL("expected MISSING_INGREDIENT");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::missing_ingredient);
      CHECK(std::string(e.what()).find("GDD4-2^6_5^1") != std::string::npos);
    }
    auto plan = plan_pipeline(34, Mode::weak);
    CHECK(unmet_ingredients(plan, {}).size() == 1);
  }

  TEST_CASE("fixture tier can be switched off") {
    Providers none;
    none.use_fixtures = false;
    none.use_files = false;
    CHECK_FALSE(none.find(kts_request(15)));
    CHECK(none.find(nested_sts_request(13)));  // search tier
    CHECK(code_of([&] { none.require(kts_request(15)); }) == ErrorCode::missing_ingredient);
  }

  TEST_CASE("file tier") {
    auto dir = scratch_dir("file-tier");
    auto fx = fixture("KTS15");
    write_text_file(dir / "KTS15.json", save_design(fx.design));
    Providers p;
    p.use_fixtures = false;
    p.extra_dirs = {dir};
    auto ing = p.find(kts_request(15));
    REQUIRE(ing);
    CHECK(ing->source.find("file") == 0);
    CHECK(ing->design == fx.design);

    // a file that does not verify is not handed out
    auto broken = fx.design;
    broken.blocks[0] = broken.blocks[1];
    write_text_file(dir / "KTS15.json", save_design(broken));
    CHECK_FALSE(p.find(kts_request(15)));
    fs::remove_all(dir);
  }
}
