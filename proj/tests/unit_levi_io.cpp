#include <doctest.h>

#include "nestkit/error.hpp"
#include "nestkit/io.hpp"
#include "nestkit/levi.hpp"
#include "nestkit/verify.hpp"
#include "support.hpp"

using namespace nestkit;
using namespace testing;

TEST_SUITE("levi") {
  TEST_CASE("graph sizes") {
    auto g = levi_graph(cyclic_sts7());
    CHECK(g.vertex_count() == 14);
    CHECK(g.edges.size() == 21);
    auto k4 = levi_graph(k4_triples());
    CHECK(k4.vertex_count() == 8);
    CHECK(k4.edges.size() == 12);
    auto empty = levi_graph(make_design(5, 3, 1, {}));
    CHECK(empty.vertex_count() == 5);
    CHECK(empty.edges.empty());
  }

  TEST_CASE("E4strong gives 7 colours") {
    auto fx = fixture("E4strong");
    auto c = nesting_to_colouring(fx.design, *fx.nesting);
    CHECK(c.palette == 7);
    CHECK_FALSE(harmonious_violation(levi_graph(fx.design), c));
    CHECK_FALSE(is_exact_colouring(fx.design, c));
  }

  TEST_CASE("perfect STS(7) colouring is exact") {
    auto sts = nested_sts7();
    auto c = nesting_to_colouring(sts.design, sts.nesting);
    CHECK(c.palette == 7);
    CHECK(is_exact_colouring(sts.design, c));
  }

  TEST_CASE("E10strong gives 16 colours") {
    auto fx = fixture("E10strong");
    CHECK(nesting_to_colouring(fx.design, *fx.nesting).palette == 16);
  }

  TEST_CASE("weak-only nestings are rejected") {
    auto fx = fixture("E4");
    try {
      nesting_to_colouring(fx.design, *fx.nesting);
      FAIL("expected NOT_STRONG");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_strong);
    }
  }

  TEST_CASE("two points with one colour") {
    auto fx = fixture("E4strong");
    auto c = nesting_to_colouring(fx.design, *fx.nesting);
    c.colour[1] = c.colour[0];
    CHECK(harmonious_violation(levi_graph(fx.design), c));
    try {
      colouring_to_nesting(fx.design, c);
      FAIL("expected NOT_HARMONIOUS");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_harmonious);
    }
  }

  TEST_CASE("round trip through E7strong") {
    auto fx = fixture("E7strong");
    auto back = colouring_to_nesting(fx.design, nesting_to_colouring(fx.design, *fx.nesting));
    CHECK(back == *fx.nesting);
    CHECK(back.w() == 11);
  }

  TEST_CASE("colours need not start at the points") {
    auto fx = fixture("E4strong");
    auto c = nesting_to_colouring(fx.design, *fx.nesting);
    for (auto& x : c.colour) x = (x + 3) % c.palette;  // a permuted palette
    c.labels.clear();
    auto n = colouring_to_nesting(fx.design, c);
    CHECK(n.w() == 7);
    CHECK(verify_strong_nesting(fx.design, n).passed());
  }

  TEST_CASE("empty design") {
    auto d = make_design(3, 3, 1, {});
    HarmoniousColouring c{{0, 1, 2}, 3, {}};
    CHECK_FALSE(is_exact_colouring(d, c));
    auto one = make_design(1, 3, 1, {});
    CHECK(is_exact_colouring(one, HarmoniousColouring{{0}, 1, {}}));
  }
}

TEST_SUITE("io") {
  TEST_CASE("design and nesting round trip") {
    for (const auto& name : fixture_names()) {
      CAPTURE(name);
      auto fx = fixture(name);
      auto file = load_design(save_design(fx.design, fx.nesting ? &*fx.nesting : nullptr));
      CHECK(file.design == fx.design);
      CHECK(file.nesting == fx.nesting);
      if (fx.nesting) CHECK(load_nesting(save_nesting(*fx.nesting)) == *fx.nesting);
    }
  }

  TEST_CASE("certificate round trip") {
    auto fx = fixture("E4strong");
    auto cert = check_optimal(verify_nesting(fx.design, *fx.nesting, Mode::strong), Mode::strong);
    cert.provenance = {"E4strong <- fixture"};
    CHECK(load_certificate(save_certificate(cert)) == cert);
    auto failing = verify_strong_nesting(fixture("E4").design, *fixture("E4").nesting);
    CHECK(load_certificate(save_certificate(failing)) == failing);
  }

  TEST_CASE("colouring round trip") {
    auto fx = fixture("E10strong");
    auto c = nesting_to_colouring(fx.design, *fx.nesting);
    CHECK(load_colouring(save_colouring(c, fx.design.v())) == c);
  }

  TEST_CASE("malformed input") {
    auto code = [](std::string_view text) {
      try {
        load_design(text);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::contract_violation;
    };
    CHECK(code("{") == ErrorCode::malformed_file);
    CHECK(code(R"({"v": 3, "k": 2, "lambda": 1, "blocks": [[0, 7]]})") == ErrorCode::malformed_file);
    CHECK(code(R"({"v": 3, "k": 2, "lambda": 1, "blocks": [[0, 1]], "phi": [2, 2]})") == ErrorCode::malformed_file);
    CHECK_THROWS_AS(load_nesting("[]"), Error);
  }

  TEST_CASE("canonical form is stable") {
    auto fx = fixture("E12strong");
    auto d = fx.design;
    auto n = *fx.nesting;
    canonicalize(d, &n);
    CHECK(is_canonical(d));
    CHECK(verify_strong_nesting(d, n).passed());
    auto text = save_design(d, &n);
    auto shuffled = fx.design;
    auto sn = *fx.nesting;
    std::reverse(shuffled.blocks.begin(), shuffled.blocks.end());
    std::reverse(sn.assignment.begin(), sn.assignment.end());
    canonicalize(shuffled, &sn);
    CHECK(save_design(shuffled, &sn) == text);
  }

  TEST_CASE("certificate text") {
    auto fx = fixture("E4");
    auto text = certificate_text(verify_strong_nesting(fx.design, *fx.nesting));
    CHECK(text.find("FAIL nested-pairs-distinct") != std::string::npos);
    CHECK(text.rfind("FAIL") != std::string::npos);
  }
}
