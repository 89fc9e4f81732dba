#include <doctest.h>

#include "nestkit/bounds.hpp"
#include "nestkit/error.hpp"
#include "nestkit/search.hpp"
#include "nestkit/verify.hpp"
#include "support.hpp"

using namespace nestkit;
using namespace testing;

TEST_SUITE("search") {
  TEST_CASE("(4,3,2) has no minimal nesting") {
    auto r = find_min_nesting(k4_triples(), Mode::minimal, 4);
    CHECK(r.status == SearchStatus::exhausted);
    CHECK_FALSE(r.nesting);
  }

  TEST_CASE("(4,3,2) weak minimum is 5") {
    auto r = find_min_nesting(k4_triples(), Mode::weak, 5);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.nesting->w() == 5);
    CHECK(verify_weak_nesting(k4_triples(), *r.nesting).passed());
    CHECK(find_min_nesting(k4_triples(), Mode::weak, 4).status == SearchStatus::exhausted);
  }

  TEST_CASE("(4,3,2) strong minimum is 7") {
    auto r = find_min_nesting(k4_triples(), Mode::strong, 7);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.nesting->w() == 7);
    CHECK(r.nesting->universe.label(4) == "∞1");
    CHECK(find_min_nesting(k4_triples(), Mode::strong, 6).status == SearchStatus::exhausted);
  }

  TEST_CASE("STS(7) nests minimally") {
    auto r = find_min_nesting(cyclic_sts7(), Mode::minimal, 7);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(classify(cyclic_sts7(), *r.nesting).classification.perfect);
  }

  TEST_CASE("fixed assignments are honoured") {
    SearchOptions opt;
    opt.fixed = {{0, 3}};  // (1,2,3) nested by 4
    auto r = find_min_nesting(k4_triples(), Mode::strong, 7, opt);
    REQUIRE(r.nesting);
    CHECK(r.nesting->assignment[0] == 3);
  }

  TEST_CASE("timeout") {
    SearchOptions opt;
    opt.timeout = std::chrono::milliseconds(0);
    auto r = find_min_nesting(fixture("E12strong").design, Mode::strong, 17, opt);
    CHECK(r.status == SearchStatus::timed_out);
  }

  TEST_CASE("cyclic base nesting") {
    auto seven = nest_cyclic_base(cyclic_sts(7));
    REQUIRE(seven);
    REQUIRE(seven->bases.size() == 1);
    const auto& e = seven->bases[0].entries;
    REQUIRE(e.size() == 4);
    CHECK(e[3].kind == BaseEntry::Kind::residue);
    for (int v : {13, 19, 25, 31, 37}) {
      CAPTURE(v);
      auto n = nest_cyclic_base(cyclic_sts(v));
      REQUIRE(n);
      auto dev = develop(*n);
      CHECK(classify(dev.design, dev.nesting).classification.perfect);
    }
    // short orbits cannot be nested with a residue
    CHECK_FALSE(nest_cyclic_base(cyclic_sts(15)));
  }

  TEST_CASE("disjoint blocks") {
    CHECK(no_disjoint_blocks(fixture("strongE6").design));
    CHECK_FALSE(no_disjoint_blocks(affine_plane_3()));
    CHECK(no_disjoint_blocks(make_design(3, 3, 1, {{0, 1, 2}})));
  }

  TEST_CASE("enumeration") {
    CHECK(enumerate_bibds(7, 3, 1).size() == 1);
    CHECK(enumerate_bibds(6, 3, 2).size() == 1);
    CHECK(enumerate_bibds(4, 3, 2).size() == 1);
    for (const auto& d : enumerate_bibds(6, 3, 2)) CHECK(verify_bibd(d).passed());
  }

  TEST_CASE("(6,3,2) strong bound") {
    const auto& rep = strong_632_report();
    CHECK(rep.value == 11);
    CHECK(rep.certificate.passed());
    for (const char* step : {"unique-up-to-isomorphism", "no-disjoint-blocks", "strong-exhausted-at-10",
                             "strong-found-at-11", "old-nested-at-most-5"}) {
      CAPTURE(step);
      const auto* c = rep.certificate.find(step);
      REQUIRE(c);
      CHECK(c->passed);
    }
    REQUIRE(rep.witness);
    CHECK(rep.witness->w() == 11);
    CHECK(certify_632_strong_bound() == 11);
    auto e6 = fixture("strongE6");
    CHECK(e6.nesting->w() == 11);  // the bound is tight
    auto cert = check_optimal(verify_nesting(e6.design, *e6.nesting, Mode::strong), Mode::strong, certified_bounds());
    CHECK(cert.bound->value == 11);
    CHECK(cert.bound->met);
  }
}
