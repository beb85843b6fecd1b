#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles/brute_force.hpp"
#include "xview/chains.hpp"
#include "xview/error.hpp"

using namespace xview;
using Strings = std::vector<std::string>;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

PairBiclusters fig2_pairs() {
  auto ds = fixtures::fig2();
  Strings views{"A", "B", "C"};
  return pairwise_biclusters(views, ds->relation_matrices());
}

BiclusterChain single(Strings seq, Strings a, Strings b) {
  return make_chain({seq}, {make_bicluster("A", "B", std::move(a), std::move(b))}, {});
}

}  // namespace

TEST_CASE("fig2 pairwise biclusters") {
  auto pairs = fig2_pairs();
  CHECK(pairs.size() == 3);
  CHECK(pairs.at({"A", "B"}).size() == 2);
  CHECK(pairs.at({"B", "C"}).size() == 1);
  CHECK(pairs.at({"A", "C"}).empty());
}

TEST_CASE("view sequences exclude reversals") {
  Strings abc{"A", "B", "C"};
  auto seqs = view_sequences(abc);
  REQUIRE(seqs.size() == 3);
  std::set<Strings> got;
  for (const auto& s : seqs) got.insert(s.views);
  CHECK(got == std::set<Strings>{{"A", "B", "C"}, {"A", "C", "B"}, {"B", "A", "C"}});

  Strings two{"A", "B"};
  CHECK(view_sequences(two).size() == 1);
  Strings four{"A", "B", "C", "D"};
  CHECK(view_sequences(four).size() == 12);
  Strings one{"A"};
  CHECK(code_of([&] { view_sequences(one); }) == Errc::too_few_views);
}

TEST_CASE("matching score on the shared view") {
  auto pairs = fig2_pairs();
  const auto& ab = pairs.at({"A", "B"});
  const auto& bc = pairs.at({"B", "C"})[0];
  CHECK(matching(ab[0], bc, "B") == doctest::Approx(2.0 / 4.0));
  CHECK(matching(ab[1], bc, "B") == doctest::Approx(3.0 / 4.0));
  CHECK(matching(bc, ab[1], "B") == matching(ab[1], bc, "B"));
  CHECK(matching(bc, bc, "B") == 1.0);
  auto other = make_bicluster("B", "C", {"B9"}, {"C1"});
  CHECK(matching(other, ab[0], "B") == 0.0);
  CHECK(code_of([&] { matching(ab[0], bc, "C"); }) == Errc::no_shared_view);
}

TEST_CASE("fig2 chains at the default threshold") {
  auto ds = fixtures::fig2();
  Strings views{"A", "B", "C"};
  auto chains = compute_chains(*ds, views, 0.4);
  REQUIRE(chains.size() == 2);

  const auto& first = chains[0];
  CHECK(first.sequence.views == Strings{"A", "B", "C"});
  CHECK(first.entity_sets.at("A") == Strings{"A1", "A2"});
  CHECK(first.entity_sets.at("B") == Strings{"B1", "B2"});
  CHECK(first.entity_sets.at("C") == Strings{"C1", "C2"});
  REQUIRE(first.scores.size() == 1);
  CHECK(first.scores[0] == doctest::Approx(0.5));

  const auto& second = chains[1];
  CHECK(second.entity_sets.at("A") == Strings{"A2", "A3"});
  CHECK(second.entity_sets.at("B") == Strings{"B2", "B3", "B4"});
  CHECK(second.scores[0] == doctest::Approx(0.75));
  CHECK(second.entities().size() == 7);
  CHECK(first.chain_id.rfind("chain-", 0) == 0);
}

TEST_CASE("threshold prunes weaker links") {
  auto ds = fixtures::fig2();
  Strings views{"A", "B", "C"};
  auto at06 = compute_chains(*ds, views, 0.6);
  REQUIRE(at06.size() == 1);
  CHECK(at06[0].scores[0] == doctest::Approx(0.75));
  CHECK(compute_chains(*ds, views, 1.0).empty());
  CHECK(compute_chains(*ds, views, 0.0).size() == 2);
  CHECK(compute_chains(*ds, views, 0.5).size() == 2);
  CHECK(code_of([&] { compute_chains(*ds, views, 1.5); }) == Errc::invalid_threshold);
  CHECK(code_of([&] { compute_chains(*ds, views, -0.1); }) == Errc::invalid_threshold);
}

TEST_CASE("two views degenerate to the pair's biclusters") {
  auto ds = fixtures::fig2();
  Strings views{"A", "B"};
  auto chains = compute_chains(*ds, views, 0.9);
  REQUIRE(chains.size() == 2);
  CHECK(chains[0].links.size() == 1);
  CHECK(chains[0].scores.empty());
  CHECK(chains[0].entity_sets.at("B") == Strings{"B1", "B2"});
}

TEST_CASE("path cap") {
  auto pairs = fig2_pairs();
  Strings views{"A", "B", "C"};
  auto seqs = view_sequences(views);
  for (auto exec : {Execution::serial, Execution::parallel}) {
    CHECK(code_of([&] { build_chains(seqs, pairs, 0.0, {1, exec}); }) == Errc::path_limit_exceeded);
    CHECK(build_chains(seqs, pairs, 0.0, {100, exec}).size() == 2);
  }
}

TEST_CASE("cleaning drops strict subsets and equal-set duplicates") {
  auto big = single({"A", "B"}, {"A1", "A2"}, {"B1"});
  auto sub = single({"A", "B"}, {"A1"}, {"B1"});
  auto disjoint = single({"A", "B"}, {"A3"}, {"B2"});
  auto cleaned = clean_chains({big, sub, disjoint});
  REQUIRE(cleaned.size() == 2);
  CHECK(std::count(cleaned.begin(), cleaned.end(), sub) == 0);

  auto twin = make_chain({{"B", "A"}}, big.links, {});
  REQUIRE(twin.entities() == big.entities());
  REQUIRE(twin.chain_id != big.chain_id);
  auto kept = clean_chains({big, twin});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].chain_id == std::min(big.chain_id, twin.chain_id));

  CHECK(clean_chains({}).empty());
}

TEST_CASE("property: cleaning keeps exactly the maximal entity sets") {
  std::mt19937 rng(31);
  std::bernoulli_distribution coin(0.4);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BiclusterChain> chains;
    int n = count(rng);
    for (int k = 0; k < n; ++k) {
      Strings a, b;
      for (int i = 0; i < 4; ++i) {
        if (coin(rng)) a.push_back("A" + std::to_string(i));
        if (coin(rng)) b.push_back("B" + std::to_string(i));
      }
      if (a.empty()) a.push_back("A0");
      if (b.empty()) b.push_back("B0");
      chains.push_back(single(coin(rng) ? Strings{"A", "B"} : Strings{"B", "A"}, a, b));
    }

    // Oracle: maximal distinct entity sets, each with its smallest id.
    using Set = std::vector<ElementRef>;
    std::map<Set, std::string> best;
    for (const auto& c : chains) {
      auto [it, fresh] = best.emplace(c.entities(), c.chain_id);
      if (!fresh) it->second = std::min(it->second, c.chain_id);
    }
    std::set<std::string> expected;
    for (const auto& [s, id] : best) {
      bool dominated = std::any_of(best.begin(), best.end(), [&](const auto& o) {
        return o.first != s && std::includes(o.first.begin(), o.first.end(), s.begin(), s.end());
      });
      if (!dominated) expected.insert(id);
    }

    auto serial = clean_chains(chains, Execution::serial);
    std::set<std::string> got;
    for (const auto& c : serial) got.insert(c.chain_id);
    CHECK(got == expected);
    CHECK(got.size() == serial.size());
    CHECK(clean_chains(chains, Execution::parallel) == serial);
  }
}

TEST_CASE("property: random three-view chains obey the linking rule") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    std::map<ViewPair, RelationMatrix> matrices;
    matrices[{"A", "B"}] = oracle::random_matrix(rng, 5, 5, 0.6, "A", "B");
    matrices[{"A", "C"}] = oracle::random_matrix(rng, 5, 5, 0.6, "A", "C");
    matrices[{"B", "C"}] = oracle::random_matrix(rng, 5, 5, 0.6, "B", "C");
    Strings views{"A", "B", "C"};
    auto pairs = pairwise_biclusters(views, matrices);
    auto seqs = view_sequences(views);
    for (double t : {0.0, 0.3, 0.6}) {
      auto serial = build_chains(seqs, pairs, t, {kDefaultPathLimit, Execution::serial});
      CHECK(build_chains(seqs, pairs, t, {kDefaultPathLimit, Execution::parallel}) == serial);
      for (const auto& c : serial) {
        REQUIRE(c.links.size() == 2);
        const auto& mid = c.sequence.views[1];
        CHECK(c.scores[0] >= t);
        CHECK(c.scores[0] > 0.0);
        CHECK(c.scores[0] == doctest::Approx(matching(c.links[0], c.links[1], mid)));
        Strings inter;
        std::set_intersection(c.links[0].side(mid)->begin(), c.links[0].side(mid)->end(),
                              c.links[1].side(mid)->begin(), c.links[1].side(mid)->end(), std::back_inserter(inter));
        CHECK(c.entity_sets.at(mid) == inter);
      }
    }
  }
}
