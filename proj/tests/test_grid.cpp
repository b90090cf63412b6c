#include <cmath>
#include <random>

#include "doctest.h"

#include "asurf/grid.hpp"
#include "support.hpp"

using namespace asurf;

namespace {

const std::string kFixtures = ASURF_FIXTURE_DIR;

const char* kToy =
    "source A\n"
    "bus A load=0\n"
    "bus B load=50\n"
    "bus C load=20\n"
    "branch ab A B kind=switch controls=sw_ab\n"
    "branch bc B C kind=line\n";

}  // namespace

TEST_CASE("toy feeder: opening the only switch drops the downstream load") {
  GridGraph g = parse_grid(kToy);
  CHECK(g.total_load_kw() == doctest::Approx(70.0));
  CHECK(validate_grid(g).empty());
  CHECK(loss_of_load(g, {}) == 0.0);
  CHECK(loss_of_load(g, {"ab"}) == doctest::Approx(70.0));
  // Lines are not remotely operable.
  CHECK_THROWS_AS((void)loss_of_load(g, {"bc"}), Error);
  CHECK_THROWS_AS((void)loss_of_load(g, {"nope"}), Error);
}

TEST_CASE("grid text format rejects malformed input") {
  CHECK_THROWS_AS(parse_grid("bus\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("bus A\n"), ParseError);                // no load
  CHECK_THROWS_AS(parse_grid("bus A load=x\nsource A\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("bus A load=0\n"), ParseError);         // no source
  CHECK_THROWS_AS(parse_grid("bus A load=0\nsource Z\n"), ParseError);
  CHECK_THROWS_AS(parse_grid("bus A load=0\nbus A load=1\nsource A\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_grid("bus A load=0\nbranch x A B kind=line\nsource A\n"),
      ParseError);  // unknown endpoint
  CHECK_THROWS_AS(
      parse_grid("bus A load=0\nbus B load=0\n"
                 "branch x A B kind=line controls=d\nsource A\n"),
      ParseError);  // lines cannot be controlled
  CHECK_THROWS_AS(
      parse_grid("bus A load=0\nbus B load=0\n"
                 "branch x A B kind=widget\nsource A\n"),
      ParseError);
}

TEST_CASE("validate_grid flags islands") {
  GridGraph g = parse_grid(
      "source A\nbus A load=0\nbus B load=1\nbus C load=1\n"
      "branch ab A B kind=line\n");
  auto diags = validate_grid(g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].rule == "disconnected");
}

TEST_CASE("fixture feeder is calibrated to the study totals") {
  GridGraph g = parse_grid(testutil::read_file(kFixtures + "/feeder.grid"));
  CHECK(validate_grid(g).empty());
  CHECK(g.total_load_kw() == doctest::Approx(4744.87).epsilon(1e-9));
  // The upstream feeder switch severs everything.
  CHECK(loss_of_load(g, {"Sub7_root"}) == doctest::Approx(4744.87));
  CHECK(loss_of_load(g, {}) == 0.0);
  // Substation feeds and line switches match the published losses.
  CHECK(loss_of_load(g, {"Sub1_feed"}) == doctest::Approx(1580.0));
  CHECK(loss_of_load(g, {"Sub6_swL2"}) == doctest::Approx(919.0));
  CHECK(loss_of_load(g, {"Sub4_swR"}) == doctest::Approx(29.0));
  // Openings on one radial stem are additive when disjoint.
  CHECK(loss_of_load(g, {"Sub2_feed", "Sub3_feed"}) ==
        doctest::Approx(303.0 + 508.0));
  // Nested openings are not: the feed already drops the whole substation.
  CHECK(loss_of_load(g, {"Sub2_feed", "Sub2_swL"}) == doctest::Approx(303.0));
}

TEST_CASE("the fixture's computed impact table covers all 27 candidates") {
  GridGraph g = parse_grid(testutil::read_file(kFixtures + "/feeder.grid"));
  auto table = compute_impact_table(g);
  CHECK(table.size() == 27);
  CHECK(table.at("Sub1_All") == doctest::Approx(1580.0));
  CHECK(table.at("Sub2_SwM") == doctest::Approx(88.0));
  CHECK(table.at("Sub7_Sw") == doctest::Approx(4744.87));
  CHECK(table.at("Sub7_All") == doctest::Approx(4744.87));

  ImpactTable full = grid_impact_table(g);
  CHECK(full.loss_kw == table);
  for (const auto& [d, loss] : table)
    CHECK(full.load_kw.at(d) == doctest::Approx(g.total_load_kw() - loss));
}

TEST_CASE("tap attack equals tripping the substation breaker") {
  GridGraph g = parse_grid(testutil::read_file(kFixtures + "/tap_demo.grid"));
  REQUIRE(g.tap_rules.size() == 1);
  CHECK(tap_attack_loss(g, g.tap_rules[0]) == doctest::Approx(30.0));
  auto table = compute_impact_table(g);
  CHECK(table.at("StA_Brk") == doctest::Approx(30.0));
  CHECK(table.at("StA_TapIn") == doctest::Approx(30.0));

  TapAttackRule bogus{"Nowhere", "a", "b"};
  CHECK_THROWS_AS((void)tap_attack_loss(g, bogus), Error);
  TapAttackRule same{"StA", "t", "t"};
  CHECK_THROWS_AS((void)tap_attack_loss(g, same), Error);
}

TEST_CASE("loss of load matches brute-force reachability on random trees") {
  std::mt19937 rng(321);
  std::uniform_int_distribution<int> nb(3, 10), parent_pick(0, 8), two(0, 1);
  std::uniform_real_distribution<double> kw(0.0, 100.0);
  for (int it = 0; it < 50; ++it) {
    int n = nb(rng);
    GridGraph g;
    g.source_bus = "b0";
    std::vector<double> load(n);
    for (int i = 0; i < n; ++i) {
      load[i] = i == 0 ? 0.0 : kw(rng);
      g.buses.push_back({"b" + std::to_string(i), load[i], {}});
    }
    std::vector<int> parent(n, -1);
    for (int i = 1; i < n; ++i) {
      parent[i] = parent_pick(rng) % i;
      Branch br;
      br.name = "e" + std::to_string(i);
      br.from = "b" + std::to_string(parent[i]);
      br.to = "b" + std::to_string(i);
      br.device = two(rng) ? BranchDevice::Switch : BranchDevice::Breaker;
      g.branches.push_back(br);
    }
    // Random open set; compare against a direct reachability sweep.
    std::set<std::string> open;
    std::vector<bool> cut(n, false);
    for (int i = 1; i < n; ++i)
      if (two(rng)) {
        open.insert("e" + std::to_string(i));
        cut[i] = true;
      }
    std::vector<bool> served(n, false);
    served[0] = true;
    for (int i = 1; i < n; ++i) {  // parents precede children
      served[i] = served[parent[i]] && !cut[i];
    }
    double expect = 0.0;
    for (int i = 0; i < n; ++i)
      if (!served[i]) expect += load[i];
    CHECK(loss_of_load(g, open) == doctest::Approx(expect).epsilon(1e-12));
    // Monotone: opening more never restores load.
    if (!open.empty()) {
      auto fewer = open;
      fewer.erase(fewer.begin());
      CHECK(loss_of_load(g, fewer) <= loss_of_load(g, open) + 1e-12);
    }
  }
}
