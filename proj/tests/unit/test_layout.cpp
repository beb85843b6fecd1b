#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles/brute_force.hpp"
#include "xview/error.hpp"
#include "xview/layout.hpp"

using namespace xview;
using Strings = std::vector<std::string>;

namespace {

LayoutItem chain1() { return {"c1", {{"A", {"A1", "A2"}}, {"B", {"B1", "B2"}}, {"C", {"C1", "C2"}}}}; }
LayoutItem chain2() { return {"c2", {{"A", {"A2", "A3"}}, {"B", {"B2", "B3", "B4"}}, {"C", {"C1", "C2"}}}}; }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

}  // namespace

TEST_CASE("vectorize over the union of members") {
  std::vector<LayoutItem> items{chain1(), chain2()};
  auto v = vectorize(items);
  CHECK(v.universe.size() == 9);
  REQUIRE(v.rows.size() == 2);
  CHECK(v.rows[0].size() == 9);
  CHECK(std::count(v.rows[0].begin(), v.rows[0].end(), 1) == 6);
  CHECK(std::count(v.rows[1].begin(), v.rows[1].end(), 1) == 7);
  CHECK(code_of([] { vectorize({}); }) == Errc::empty_input);
}

TEST_CASE("Jaccard distance between the fig2 chains") {
  std::vector<LayoutItem> items{chain1(), chain2()};
  auto d = pairwise_distances(vectorize(items));
  CHECK(d.at(0, 1) == doctest::Approx(5.0 / 9.0));
  CHECK(d.at(1, 0) == d.at(0, 1));
  CHECK(d.at(0, 0) == 0.0);
  CHECK(pairwise_distances(vectorize(items), Execution::serial) == d);
}

TEST_CASE("MDS closed-form cases") {
  DistanceMatrix one(1);
  auto p1 = mds_2d(one);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == Point2{0, 0});

  DistanceMatrix two(2);
  two.set(0, 1, 2.0);
  auto p2 = mds_2d(two);
  CHECK(std::abs(p2[0].x) == doctest::Approx(1.0));
  CHECK(p2[0].x == doctest::Approx(-p2[1].x));
  CHECK(p2[0].y == doctest::Approx(0.0));
  CHECK(p2[1].y == doctest::Approx(0.0));

  DistanceMatrix tri(3);
  tri.set(0, 1, 3.0);
  tri.set(1, 2, 4.0);
  tri.set(0, 2, 5.0);
  CHECK(oracle::max_abs_diff(oracle::euclidean(mds_2d(tri)), tri) < 1e-9);

  DistanceMatrix bad(2);
  bad.set(0, 1, std::nan(""));
  CHECK(code_of([&] { mds_2d(bad); }) == Errc::non_finite_distance);
}

TEST_CASE("property: MDS recovers planar configurations") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_int_distribution<int> size(1, 8);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Point2> pts(static_cast<std::size_t>(size(rng)));
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    auto d = oracle::euclidean(pts);
    auto out = mds_2d(d);
    REQUIRE(out.size() == pts.size());
    CHECK(oracle::max_abs_diff(oracle::euclidean(out), d) < 1e-6);
  }
}

TEST_CASE("MDS sign convention is deterministic") {
  DistanceMatrix tri(3);
  tri.set(0, 1, 3.0);
  tri.set(1, 2, 4.0);
  tri.set(0, 2, 5.0);
  auto p = mds_2d(tri);
  for (auto axis : {&Point2::x, &Point2::y}) {
    double best = 0.0;
    for (const auto& q : p) {
      if (std::abs(q.*axis) > std::abs(best)) best = q.*axis;
    }
    CHECK(best > 0.0);
  }
  CHECK(mds_2d(tri) == p);
}

TEST_CASE("radius mapping") {
  CHECK(radius(1, 1, 5) == doctest::Approx(6.0));
  CHECK(radius(5, 1, 5) == doctest::Approx(30.0));
  CHECK(radius(3, 1, 5) == doctest::Approx(18.0));
  CHECK(radius(4, 4, 4) == doctest::Approx(18.0));
  CHECK(radius(2, 0, 4, 10.0, 20.0) == doctest::Approx(15.0));
  CHECK(code_of([] { radius(7, 1, 5); }) == Errc::out_of_range_count);
  CHECK(code_of([] { radius(0, 1, 5); }) == Errc::out_of_range_count);
}

TEST_CASE("bar summaries follow the given view order") {
  Strings abc{"A", "B", "C"};
  CHECK(bar_summary(chain1(), abc) == std::vector<Bar>{{"A", 2}, {"B", 2}, {"C", 2}});
  CHECK(bar_summary(chain2(), abc) == std::vector<Bar>{{"A", 2}, {"B", 3}, {"C", 2}});
  Strings order{"C", "A", "B"};
  CHECK(bar_summary(chain2(), order) == std::vector<Bar>{{"C", 2}, {"A", 2}, {"B", 3}});
  Strings partial{"B", "D"};
  CHECK(bar_summary(chain2(), partial) == std::vector<Bar>{{"B", 3}});
}

TEST_CASE("compute_layout assembles normalized geometry") {
  std::vector<LayoutItem> items{chain1(), chain2()};
  Strings abc{"A", "B", "C"};
  auto r = compute_layout(items, abc);
  CHECK(r.coordinates.size() == 2);
  for (const auto& [id, p] : r.coordinates) {
    CHECK(std::abs(p.x) <= 1.0 + 1e-12);
    CHECK(std::abs(p.y) <= 1.0 + 1e-12);
  }
  CHECK(std::abs(r.coordinates.at("c1").x - r.coordinates.at("c2").x) == doctest::Approx(2.0));
  CHECK(r.radii.at("c1") == doctest::Approx(6.0));
  CHECK(r.radii.at("c2") == doctest::Approx(30.0));
  CHECK(r.bar_reference_max == 3);
  CHECK(r.bar_summaries.at("c2")[1] == Bar{"B", 3});

  std::vector<LayoutItem> lone{chain1()};
  auto s = compute_layout(lone, abc);
  CHECK(s.coordinates.at("c1") == Point2{0, 0});
  CHECK(s.radii.at("c1") == doctest::Approx(18.0));

  LayoutOptions serial;
  serial.exec = Execution::serial;
  CHECK(compute_layout(items, abc, serial) == r);
}
