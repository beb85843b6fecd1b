#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "xview/error.hpp"
#include "xview/session.hpp"

using namespace xview;
using nlohmann::json;
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

std::shared_ptr<const Dataset> scenario() {
  return std::make_shared<const Dataset>(Dataset::from_bundle(load_bundle(fixtures::data_path("scenario.json"))));
}

// The chain whose B side is {B2, B3, B4}.
std::string strong_chain(const RelationshipView& rv) {
  for (const auto& r : rv.relationships) {
    if (r.entity_sets.at("B").size() == 3) return r.id;
  }
  return {};
}

}  // namespace

TEST_CASE("creating relationship-views") {
  Workspace ws(fixtures::fig2());
  CHECK(ws.panels().size() == 3);

  Strings ab{"B", "A"};
  const auto& bi = ws.create_relationship_view(ab);
  CHECK(bi.level == Level::bi_group);
  CHECK(bi.source_views == Strings{"A", "B"});
  CHECK(bi.relationships.size() == 2);
  CHECK_FALSE(bi.diagnostic.has_value());
  CHECK(ws.panel(bi.rv_id).kind == PanelKind::relationship_view);

  Strings abc{"A", "B", "C"};
  const auto& multi = ws.create_relationship_view(abc, 0.4);
  CHECK(multi.level == Level::multi_group);
  CHECK(multi.relationships.size() == 2);
  CHECK(multi.layout.coordinates.size() == 2);
  CHECK(multi.rv_id != bi.rv_id);

  Strings ac{"A", "C"};
  const auto& empty = ws.create_relationship_view(ac);
  CHECK(empty.relationships.empty());
  REQUIRE(empty.diagnostic.has_value());
  CHECK(empty.diagnostic->code == "NoRelationshipsFound");

  CHECK(code_of([&] { ws.create_relationship_view(abc); }) == Errc::invalid_threshold);
  CHECK(code_of([&] { ws.create_relationship_view(ab, 0.4); }) == Errc::invalid_threshold);
  Strings one{"A"};
  CHECK(code_of([&] { ws.create_relationship_view(one); }) == Errc::too_few_views);
  Strings unknown{"A", "Q"};
  CHECK(code_of([&] { ws.create_relationship_view(unknown); }) == Errc::unknown_view);
}

TEST_CASE("threshold changes keep surviving marks") {
  Workspace ws(fixtures::fig2());
  Strings abc{"A", "B", "C"};
  auto rv_id = ws.create_relationship_view(abc, 0.4).rv_id;
  auto strong = strong_chain(ws.relationship_view(rv_id));
  REQUIRE_FALSE(strong.empty());
  ws.set_state(rv_id, strong, RelState::marked);
  ws.set_display_mode(rv_id, strong, DisplayMode::summary);

  const auto& at06 = ws.set_threshold(rv_id, 0.6);
  REQUIRE(at06.relationships.size() == 1);
  CHECK(at06.relationships[0].id == strong);
  CHECK(at06.states.at(strong) == RelState::marked);
  CHECK(at06.mode(strong) == DisplayMode::summary);

  auto before = relationship_view_json(ws.relationship_view(rv_id));
  ws.set_threshold(rv_id, 0.6);
  CHECK(relationship_view_json(ws.relationship_view(rv_id)) == before);

  const auto& none = ws.set_threshold(rv_id, 1.0);
  CHECK(none.relationships.empty());
  CHECK(none.diagnostic.has_value());
  const auto& back = ws.set_threshold(rv_id, 0.4);
  CHECK(back.relationships.size() == 2);

  Strings ab{"A", "B"};
  auto bi = ws.create_relationship_view(ab).rv_id;
  CHECK(code_of([&] { ws.set_threshold(bi, 0.5); }) == Errc::not_a_chain_view);
  CHECK(code_of([&] { ws.set_threshold(rv_id, 2.0); }) == Errc::invalid_threshold);
  CHECK(code_of([&] { ws.set_threshold("rv-99", 0.5); }) == Errc::unknown_panel);
}

TEST_CASE("four-way search from an element") {
  Workspace ws(fixtures::fig2());
  Strings abc{"A", "B", "C"};
  auto rv_id = ws.create_relationship_view(abc, 0.4).rv_id;

  auto links = ws.four_way_search(ElementRef{"A", "A2"});
  for (const char* b : {"B1", "B2", "B3", "B4"}) CHECK(links.has_element({"B", b}));
  CHECK(links.has_element({"A", "A1"}));
  CHECK(links.has_element({"A", "A3"}));
  CHECK_FALSE(links.has_element({"A", "A2"}));
  const auto& rv = ws.relationship_view(rv_id);
  for (const auto& r : rv.relationships) CHECK(links.has_relationship({rv_id, r.id}));
  CHECK(links.has_element({"C", "C1"}));

  auto lone = ws.four_way_search(ElementRef{"C", "C1"});
  CHECK(lone.has_element({"C", "C2"}));
  CHECK(lone.has_element({"B", "B1"}));

  CHECK(code_of([&] { ws.four_way_search(ElementRef{"A", "A9"}); }) == Errc::unknown_origin);
}

TEST_CASE("four-way search from a relationship") {
  Workspace ws(fixtures::fig2());
  Strings abc{"A", "B", "C"};
  Strings ab{"A", "B"};
  auto multi = ws.create_relationship_view(abc, 0.4).rv_id;
  auto bi = ws.create_relationship_view(ab).rv_id;
  const auto& rv = ws.relationship_view(multi);
  std::string weak;
  for (const auto& r : rv.relationships) {
    if (r.id != strong_chain(rv)) weak = r.id;
  }

  auto links = ws.four_way_search(RelationshipRef{multi, weak});
  CHECK(links.cross_view_elements.size() == 6);
  CHECK(links.has_relationship({multi, strong_chain(rv)}));
  for (const auto& r : ws.relationship_view(bi).relationships) CHECK(links.has_relationship({bi, r.id}));
  auto j = to_json(links);
  CHECK(j.contains("related_relationships"));
  CHECK(code_of([&] { ws.four_way_search(RelationshipRef{multi, "nope"}); }) == Errc::unknown_origin);
}

TEST_CASE("manual links join the search results") {
  Workspace ws(fixtures::fig2());
  CHECK(ws.add_manual_link({"A", "A1"}, {"C", "C1"}));
  CHECK_FALSE(ws.add_manual_link({"C", "C1"}, {"A", "A1"}));
  CHECK(ws.manual_links().size() == 1);
  auto links = ws.four_way_search(ElementRef{"A", "A1"});
  CHECK(links.cross_view_elements.count({{"C", "C1"}, LinkKind::manual}) == 1);
  CHECK(code_of([&] { ws.add_manual_link({"A", "A1"}, {"A", "A1"}); }) == Errc::self_link);
  CHECK(code_of([&] { ws.add_manual_link({"A", "A1"}, {"Z", "Z1"}); }) == Errc::unknown_element);
}

TEST_CASE("focus is exclusive and leaves marks alone") {
  Workspace ws(fixtures::fig2());
  Strings abc{"A", "B", "C"};
  Strings ab{"A", "B"};
  auto multi = ws.create_relationship_view(abc, 0.4).rv_id;
  auto bi = ws.create_relationship_view(ab).rv_id;
  auto c0 = ws.relationship_view(multi).relationships[0].id;
  auto c1 = ws.relationship_view(multi).relationships[1].id;
  auto b0 = ws.relationship_view(bi).relationships[0].id;

  ws.set_state(multi, c0, RelState::focused);
  ws.set_state(bi, b0, RelState::focused);
  CHECK(ws.relationship_view(multi).states.at(c0) == RelState::normal);
  CHECK(ws.relationship_view(bi).states.at(b0) == RelState::focused);

  ws.set_state(multi, c1, RelState::marked);
  ws.set_state(multi, c1, RelState::focused);
  CHECK(ws.relationship_view(multi).states.at(c1) == RelState::marked);
  CHECK(code_of([&] { ws.set_state(multi, "zzz", RelState::selected); }) == Errc::unknown_relationship);
}

TEST_CASE("panel dragging, pinning and resizing") {
  Workspace ws(fixtures::fig2());
  Strings abc{"A", "B", "C"};
  auto rv_id = ws.create_relationship_view(abc, 0.4).rv_id;
  auto c0 = ws.relationship_view(rv_id).relationships[0].id;
  auto start = ws.panel(rv_id).position;

  // Nothing selected: only the dragged panel moves.
  auto moved = ws.drag_panel(rv_id, 10, 5);
  REQUIRE(moved.size() == 1);
  CHECK(ws.panel(rv_id).position == Point2{start.x + 10, start.y + 5});
  CHECK(ws.drag_panel(rv_id, 0, 0).empty());

  ws.set_state(rv_id, c0, RelState::selected);
  ws.pin("B", true);
  auto a_before = ws.panel("A").position;
  auto b_before = ws.panel("B").position;
  moved = ws.drag_panel(rv_id, -4, 8);
  CHECK(moved.size() == 3);
  CHECK(moved.front().first == rv_id);
  CHECK(ws.panel("A").position == Point2{a_before.x - 4, a_before.y + 8});
  CHECK(ws.panel("B").position == b_before);

  CHECK(code_of([&] { ws.drag_panel("B", 1, 1); }) == Errc::panel_pinned);
  ws.pin("B", false);
  CHECK(ws.drag_panel("B", 1, 1).size() == 1);

  ws.resize("A", 120, 90);
  CHECK(ws.panel("A").width == 120);
  CHECK(code_of([&] { ws.resize("A", 119, 200); }) == Errc::below_minimum_size);
  CHECK(code_of([&] { ws.resize("A", 200, 89); }) == Errc::below_minimum_size);
  CHECK(code_of([&] { ws.resize("nope", 200, 200); }) == Errc::unknown_panel);
  CHECK(code_of([&] { ws.close_panel("A"); }) == Errc::panel_not_closable);
  ws.close_panel(rv_id);
  CHECK(code_of([&] { ws.panel(rv_id); }) == Errc::unknown_panel);
  CHECK(ws.relationship_views().empty());
}

TEST_CASE("rearranging relationships needs a pinned panel") {
  Workspace ws(fixtures::fig2());
  Strings abc{"A", "B", "C"};
  auto rv_id = ws.create_relationship_view(abc, 0.4).rv_id;
  auto c0 = ws.relationship_view(rv_id).relationships[0].id;
  CHECK(code_of([&] { ws.move_relationships(rv_id, {{c0, {0.5, 0.5}}}); }) == Errc::panel_not_pinned);
  ws.pin(rv_id, true);
  const auto& rv = ws.move_relationships(rv_id, {{c0, {0.5, 0.5}}});
  CHECK(rv.manually_edited);
  CHECK(rv.position(c0) == Point2{0.5, 0.5});
  // Manual positions survive a re-threshold that keeps the chain.
  const auto& again = ws.set_threshold(rv_id, 0.4);
  CHECK(again.position(c0) == Point2{0.5, 0.5});
}

TEST_CASE("document retrieval over the scenario") {
  Workspace ws(scenario());
  Strings views{"person", "location", "org"};
  const auto& rv = ws.create_relationship_view(views, 0.4);
  REQUIRE_FALSE(rv.relationships.empty());
  for (const auto& r : rv.relationships) {
    auto docs = ws.retrieve_documents(rv.rv_id, r.id);
    CHECK_FALSE(docs.empty());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& d = docs[i];
      CHECK(d.member_count >= 2);
      CHECK(d.highlights.size() == d.member_count);
      for (const auto& h : d.highlights) {
        CHECK(r.contains(h.element));
        for (const auto& span : h.spans) CHECK(d.document->span_text(span) == ws.dataset().find_element(h.element)->label);
      }
      if (i > 0) CHECK(docs[i - 1].member_count >= d.member_count);
    }
  }
  const auto& dp = ws.open_documents(rv.rv_id, rv.relationships[0].id);
  CHECK(dp.panel_id.rfind("docs-", 0) == 0);
  CHECK(ws.panel(dp.panel_id).kind == PanelKind::document);

  Workspace plain(fixtures::fig2());
  Strings ab{"A", "B"};
  const auto& bi = plain.create_relationship_view(ab);
  CHECK(code_of([&] { plain.retrieve_documents(bi.rv_id, bi.relationships[0].id); }) == Errc::no_documents);
}

TEST_CASE("session log and replay") {
  Session s(fixtures::fig2());
  auto r = s.execute("create_relationship_view", {{"views", {"A", "B", "C"}}, {"threshold", 0.4}});
  CHECK(r["seq"] == 1);
  auto rv_id = r["result"]["rv_id"].get<std::string>();
  auto rel = r["result"]["relationships"][0]["id"].get<std::string>();
  s.execute("mark", {{"rv_id", rv_id}, {"relationship_id", rel}});
  s.execute("set_threshold", {{"rv_id", rv_id}, {"threshold", 0.6}});

  // Failures do not reach the log.
  CHECK_THROWS_AS(s.execute("resize", {{"panel_id", "A"}, {"w", 10}, {"h", 10}}), Error);
  CHECK_THROWS_AS(s.execute("frobnicate", json::object()), Error);
  CHECK(s.log().size() == 3);

  s.execute("drag_panel", {{"panel_id", "A"}, {"dx", 3}, {"dy", 4}});
  s.execute("add_manual_link", {{"a", {{"view_id", "A"}, {"element_id", "A1"}}}, {"b", {{"view_id", "C"}, {"element_id", "C2"}}}});
  auto log = s.log();
  CHECK(log.back().seq == 5);
  auto copy = Session::replay(fixtures::fig2(), log);
  CHECK(copy->snapshot().dump() == s.snapshot().dump());

  std::vector<Command> round;
  for (const auto& c : log) round.push_back(command_from_json(json::parse(command_to_json(c).dump())));
  CHECK(Session::replay(fixtures::fig2(), round)->snapshot() == s.snapshot());
}

TEST_CASE("property: random command logs replay identically") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    Session s(fixtures::fig2());
    s.execute("create_relationship_view", {{"views", {"A", "B", "C"}}, {"threshold", 0.4}});
    s.execute("create_relationship_view", {{"views", {"A", "B"}}});
    std::uniform_int_distribution<int> op(0, 5), d(-30, 30);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
      try {
        switch (op(rng)) {
          case 0: s.execute("set_threshold", {{"rv_id", "rv-1"}, {"threshold", t(rng)}}); break;
          case 1: s.execute("drag_panel", {{"panel_id", std::string(1, "ABC"[k % 3])}, {"dx", d(rng)}, {"dy", d(rng)}}); break;
          case 2: s.execute("drag_panel", {{"panel_id", k % 2 ? "rv-1" : "rv-2"}, {"dx", d(rng)}, {"dy", d(rng)}}); break;
          case 3: s.execute("pin", {{"panel_id", std::string(1, "ABC"[k % 3])}, {"on", k % 2 == 0}}); break;
          case 4: {
            auto ids = s.read([](const Workspace& w) {
              Strings out;
              for (const auto& r : w.relationship_view("rv-2").relationships) out.push_back(r.id);
              return out;
            });
            s.execute("set_state", {{"rv_id", "rv-2"}, {"relationship_id", ids[k % ids.size()]}, {"state", k % 4 ? "selected" : "focused"}});
            break;
          }
          default: s.execute("set_display_mode", {{"rv_id", "rv-2"}, {"mode", k % 2 ? "summary" : "circle"}}); break;
        }
      } catch (const Error&) {
      }
    }
    CHECK(Session::replay(fixtures::fig2(), s.log())->snapshot().dump() == s.snapshot().dump());
  }
}
