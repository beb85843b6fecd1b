#include "xview/session.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "xview/error.hpp"
#include "xview/serialize.hpp"

namespace xview {

using nlohmann::json;

std::string_view to_string(Level v) { return v == Level::bi_group ? "bi_group" : "multi_group"; }

std::string_view to_string(RelState v) {
  switch (v) {
    case RelState::normal: return "normal";
    case RelState::focused: return "focused";
    case RelState::selected: return "selected";
    case RelState::marked: return "marked";
  }
  return "normal";
}

std::string_view to_string(DisplayMode v) { return v == DisplayMode::circle ? "circle" : "summary"; }

std::string_view to_string(PanelKind v) {
  switch (v) {
    case PanelKind::view: return "view";
    case PanelKind::relationship_view: return "relationship_view";
    case PanelKind::document: return "document";
  }
  return "view";
}

std::string_view to_string(LinkKind v) { return v == LinkKind::automatic ? "automatic" : "manual"; }

RelState parse_state(std::string_view text) {
  for (auto s : {RelState::normal, RelState::focused, RelState::selected, RelState::marked}) {
    if (to_string(s) == text) return s;
  }
  throw Error(Errc::invalid_argument, "unknown relationship state '" + std::string(text) + "'");
}

DisplayMode parse_display_mode(std::string_view text) {
  for (auto m : {DisplayMode::circle, DisplayMode::summary}) {
    if (to_string(m) == text) return m;
  }
  throw Error(Errc::invalid_argument, "unknown display mode '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

Relationship Relationship::from(Bicluster b) {
  Relationship r;
  r.id = b.bicluster_id;
  r.entity_sets[b.view_a] = b.elements_a;
  r.entity_sets[b.view_b] = b.elements_b;
  r.members = r.layout_item().members();
  r.content = std::move(b);
  return r;
}

Relationship Relationship::from(BiclusterChain c) {
  Relationship r;
  r.id = c.chain_id;
  r.entity_sets = c.entity_sets;
  r.members = c.entities();
  r.content = std::move(c);
  return r;
}

bool Relationship::contains(const ElementRef& ref) const {
  return std::binary_search(members.begin(), members.end(), ref);
}

const Relationship* RelationshipView::find(std::string_view relationship_id) const {
  for (const auto& r : relationships) {
    if (r.id == relationship_id) return &r;
  }
  return nullptr;
}

Point2 RelationshipView::position(const std::string& relationship_id) const {
  if (auto it = positions.find(relationship_id); it != positions.end()) return it->second;
  if (auto it = layout.coordinates.find(relationship_id); it != layout.coordinates.end()) return it->second;
  return {};
}

DisplayMode RelationshipView::mode(const std::string& relationship_id) const {
  auto it = display_modes.find(relationship_id);
  return it == display_modes.end() ? default_mode : it->second;
}

bool LinkSet::has_element(const ElementRef& ref) const {
  for (const auto* s : {&same_view_elements, &cross_view_elements}) {
    for (const auto& e : *s) {
      if (e.ref == ref) return true;
    }
  }
  return false;
}

bool LinkSet::has_relationship(const RelationshipRef& ref) const {
  for (const auto& r : related_relationships) {
    if (r.ref == ref) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kViewPanelWidth = 360.0;
constexpr double kViewPanelHeight = 280.0;
constexpr double kRvPanelWidth = 320.0;
constexpr double kRvPanelHeight = 320.0;
constexpr double kDocPanelWidth = 360.0;
constexpr double kDocPanelHeight = 280.0;

bool overlaps(const Panel& p, double x, double y, double w, double h) {
  return x < p.position.x + p.width && p.position.x < x + w && y < p.position.y + p.height && p.position.y < y + h;
}

double jaccard_distance(const std::vector<ElementRef>& x, const std::vector<ElementRef>& y) {
  std::vector<ElementRef> inter;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(inter));
  const std::size_t uni = x.size() + y.size() - inter.size();
  return uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter.size()) / static_cast<double>(uni);
}

}  // namespace

Workspace::Workspace(std::shared_ptr<const Dataset> dataset) : dataset_(std::move(dataset)) {
  std::vector<std::string> ids;
  for (const auto& v : dataset_->views()) ids.push_back(v.id());
  dataset_biclusters_ = pairwise_biclusters(ids, dataset_->relation_matrices());
  for (const auto& v : dataset_->views()) place_panel(v.id(), PanelKind::view, kViewPanelWidth, kViewPanelHeight);
}

Panel& Workspace::place_panel(std::string panel_id, PanelKind kind, double width, double height) {
  for (double y = 0.0;; y += kPlacementStep) {
    for (double x = 0.0; x + width <= kCanvasWidth || x == 0.0; x += kPlacementStep) {
      bool free = std::none_of(panels_.begin(), panels_.end(),
                               [&](const Panel& p) { return overlaps(p, x, y, width, height); });
      if (free) {
        panels_.push_back(Panel{std::move(panel_id), kind, {x, y}, width, height, false});
        return panels_.back();
      }
      if (x + width > kCanvasWidth) break;
    }
  }
}

std::string Workspace::next_panel_id(std::string_view prefix) {
  for (;;) {
    std::string id = std::string(prefix) + "-" + std::to_string(++panel_counter_);
    bool taken = std::any_of(panels_.begin(), panels_.end(), [&](const Panel& p) { return p.panel_id == id; });
    if (!taken) return id;
  }
}

const RelationshipView& Workspace::relationship_view(std::string_view rv_id) const {
  auto it = rvs_.find(std::string(rv_id));
  if (it == rvs_.end()) {
    throw Error(Errc::unknown_panel, "unknown relationship-view '" + std::string(rv_id) + "'",
                {{"panel_id", std::string(rv_id)}});
  }
  return it->second;
}

RelationshipView& Workspace::mutable_rv(std::string_view rv_id) {
  return const_cast<RelationshipView&>(std::as_const(*this).relationship_view(rv_id));
}

const Panel& Workspace::panel(std::string_view panel_id) const {
  for (const auto& p : panels_) {
    if (p.panel_id == panel_id) return p;
  }
  throw Error(Errc::unknown_panel, "unknown panel '" + std::string(panel_id) + "'", {{"panel_id", std::string(panel_id)}});
}

Panel& Workspace::mutable_panel(std::string_view panel_id) {
  return const_cast<Panel&>(std::as_const(*this).panel(panel_id));
}

void Workspace::fill_relationships(RelationshipView& rv) const {
  rv.relationships.clear();
  if (rv.level == Level::bi_group) {
    auto it = dataset_biclusters_.find({rv.source_views[0], rv.source_views[1]});
    if (it != dataset_biclusters_.end()) {
      for (const auto& b : it->second) rv.relationships.push_back(Relationship::from(b));
    }
  } else {
    for (auto& c : compute_chains(*dataset_, rv.source_views, *rv.threshold)) {
      rv.relationships.push_back(Relationship::from(std::move(c)));
    }
  }

  std::vector<LayoutItem> items;
  for (const auto& r : rv.relationships) items.push_back(r.layout_item());
  rv.layout = compute_layout(items, rv.source_views);

  if (rv.relationships.empty()) {
    std::string what = rv.level == Level::bi_group ? "no biclusters between " : "no bicluster-chains over ";
    for (std::size_t i = 0; i < rv.source_views.size(); ++i) what += (i ? "," : "") + rv.source_views[i];
    rv.diagnostic = Diagnostic{"NoRelationshipsFound", what};
  } else {
    rv.diagnostic.reset();
  }
}

const RelationshipView& Workspace::create_relationship_view(std::span<const std::string> views,
                                                            std::optional<double> threshold) {
  if (views.size() < 2) throw Error(Errc::too_few_views, "a relationship-view needs at least two views");
  auto canonical = dataset_->canonical_views(views);
  if (canonical.size() >= 3 && !threshold) {
    throw Error(Errc::invalid_threshold, "a chain relationship-view needs a threshold");
  }
  if (canonical.size() == 2 && threshold) {
    throw Error(Errc::invalid_threshold, "a threshold only applies to three or more views");
  }
  if (threshold) validate_threshold(*threshold);

  RelationshipView rv;
  rv.level = canonical.size() == 2 ? Level::bi_group : Level::multi_group;
  rv.source_views = std::move(canonical);
  rv.threshold = threshold;
  fill_relationships(rv);
  for (const auto& r : rv.relationships) rv.states[r.id] = RelState::normal;

  rv.rv_id = next_panel_id("rv");
  place_panel(rv.rv_id, PanelKind::relationship_view, kRvPanelWidth, kRvPanelHeight);
  auto [it, _] = rvs_.emplace(rv.rv_id, std::move(rv));
  return it->second;
}

const RelationshipView& Workspace::set_threshold(const std::string& rv_id, double threshold) {
  auto& rv = mutable_rv(rv_id);
  if (rv.level != Level::multi_group) {
    throw Error(Errc::not_a_chain_view, "relationship-view '" + rv_id + "' shows biclusters, not chains");
  }
  validate_threshold(threshold);

  RelationshipView next = rv;
  next.threshold = threshold;
  fill_relationships(next);

  next.states.clear();
  next.positions.clear();
  next.display_modes.clear();
  for (const auto& r : next.relationships) {
    auto st = rv.states.find(r.id);
    next.states[r.id] = st == rv.states.end() ? RelState::normal : st->second;
    if (auto m = rv.display_modes.find(r.id); m != rv.display_modes.end()) next.display_modes[r.id] = m->second;
    if (rv.manually_edited && rv.find(r.id) != nullptr) next.positions[r.id] = rv.position(r.id);
  }
  rv = std::move(next);
  return rv;
}

const RelationshipView& Workspace::set_state(const std::string& rv_id, const std::string& relationship_id,
                                             RelState state) {
  auto& rv = mutable_rv(rv_id);
  if (rv.find(relationship_id) == nullptr) {
    throw Error(Errc::unknown_relationship, "unknown relationship '" + relationship_id + "' in " + rv_id,
                {{"rv_id", rv_id}, {"relationship_id", relationship_id}});
  }
  if (state == RelState::focused) {
    // Only one relationship holds the hover focus at a time.
    for (auto& [_, other] : rvs_) {
      for (auto& [id, st] : other.states) {
        if (st == RelState::focused) st = RelState::normal;
      }
    }
    auto& st = rv.states[relationship_id];
    if (st == RelState::normal) st = RelState::focused;
    return rv;
  }
  rv.states[relationship_id] = state;
  return rv;
}

const RelationshipView& Workspace::set_display_mode(const std::string& rv_id,
                                                    const std::optional<std::string>& relationship_id,
                                                    DisplayMode mode) {
  auto& rv = mutable_rv(rv_id);
  if (!relationship_id) {
    rv.default_mode = mode;
    rv.display_modes.clear();
    return rv;
  }
  if (rv.find(*relationship_id) == nullptr) {
    throw Error(Errc::unknown_relationship, "unknown relationship '" + *relationship_id + "' in " + rv_id,
                {{"rv_id", rv_id}, {"relationship_id", *relationship_id}});
  }
  rv.display_modes[*relationship_id] = mode;
  return rv;
}

const RelationshipView& Workspace::move_relationships(const std::string& rv_id,
                                                      const std::map<std::string, Point2>& positions) {
  auto& rv = mutable_rv(rv_id);
  if (!panel(rv_id).pinned) {
    throw Error(Errc::panel_not_pinned, "pin relationship-view '" + rv_id + "' before rearranging its circles",
                {{"panel_id", rv_id}});
  }
  for (const auto& [id, p] : positions) {
    if (rv.find(id) == nullptr) {
      throw Error(Errc::unknown_relationship, "unknown relationship '" + id + "' in " + rv_id,
                  {{"rv_id", rv_id}, {"relationship_id", id}});
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(Errc::invalid_argument, "position must be finite");
  }
  for (const auto& [id, p] : positions) rv.positions[id] = p;
  if (!positions.empty()) rv.manually_edited = true;
  return rv;
}

std::vector<std::pair<std::string, Point2>> Workspace::drag_panel(const std::string& panel_id, double dx, double dy) {
  Panel& dragged = mutable_panel(panel_id);
  if (dragged.pinned) throw Error(Errc::panel_pinned, "panel '" + panel_id + "' is pinned", {{"panel_id", panel_id}});
  if (!std::isfinite(dx) || !std::isfinite(dy)) throw Error(Errc::invalid_argument, "drag delta must be finite");

  std::vector<std::pair<std::string, Point2>> moved;
  if (dx == 0.0 && dy == 0.0) return moved;

  std::set<std::string> followers;
  if (dragged.kind == PanelKind::relationship_view) {
    // Panels whose elements are currently linked (hover or selection) to
    // the dragged relationship-view move along unless pinned.
    const auto& rv = relationship_view(panel_id);
    for (const auto& r : rv.relationships) {
      auto st = rv.states.at(r.id);
      if (st != RelState::focused && st != RelState::selected) continue;
      for (const auto& m : r.members) followers.insert(m.view_id);
    }
  }

  dragged.position = {dragged.position.x + dx, dragged.position.y + dy};
  moved.emplace_back(dragged.panel_id, dragged.position);
  for (auto& p : panels_) {
    if (p.kind != PanelKind::view || p.pinned || !followers.contains(p.panel_id)) continue;
    p.position = {p.position.x + dx, p.position.y + dy};
    moved.emplace_back(p.panel_id, p.position);
  }
  return moved;
}

void Workspace::pin(const std::string& panel_id, bool on) { mutable_panel(panel_id).pinned = on; }

void Workspace::resize(const std::string& panel_id, double width, double height) {
  Panel& p = mutable_panel(panel_id);
  if (!(width >= kMinPanelWidth && height >= kMinPanelHeight) || !std::isfinite(width) || !std::isfinite(height)) {
    throw Error(Errc::below_minimum_size,
                "panels are at least " + std::to_string(static_cast<int>(kMinPanelWidth)) + "x" +
                    std::to_string(static_cast<int>(kMinPanelHeight)),
                {{"panel_id", panel_id}});
  }
  p.width = width;
  p.height = height;
}

void Workspace::close_panel(const std::string& panel_id) {
  const Panel& p = panel(panel_id);
  if (p.kind == PanelKind::view) {
    throw Error(Errc::panel_not_closable, "data view panels stay open", {{"panel_id", panel_id}});
  }
  if (p.kind == PanelKind::relationship_view) rvs_.erase(panel_id);
  std::erase_if(document_panels_, [&](const DocumentPanel& d) { return d.panel_id == panel_id; });
  std::erase_if(panels_, [&](const Panel& q) { return q.panel_id == panel_id; });
}

bool Workspace::add_manual_link(const ElementRef& a, const ElementRef& b) {
  for (const auto* ref : {&a, &b}) {
    if (!dataset_->contains(*ref)) {
      throw Error(Errc::unknown_element, "unknown element " + to_string(*ref),
                  {{"view_id", ref->view_id}, {"element_id", ref->element_id}});
    }
  }
  if (a == b) throw Error(Errc::self_link, "cannot link " + to_string(a) + " to itself");
  return manual_links_.insert(std::minmax(a, b)).second;
}

std::vector<RetrievedDocument> Workspace::retrieve_documents(const std::string& rv_id,
                                                             const std::string& relationship_id) const {
  const auto& rv = relationship_view(rv_id);
  const auto* rel = rv.find(relationship_id);
  if (rel == nullptr) {
    throw Error(Errc::unknown_relationship, "unknown relationship '" + relationship_id + "' in " + rv_id,
                {{"rv_id", rv_id}, {"relationship_id", relationship_id}});
  }
  if (!dataset_->has_documents()) throw Error(Errc::no_documents, "dataset '" + dataset_->dataset_id() + "' has no documents");

  std::vector<RetrievedDocument> out;
  for (const auto& doc : dataset_->documents()) {
    std::map<ElementRef, std::vector<Occurrence>> groups;
    for (const auto& occ : doc.occurrences) {
      if (rel->contains(occ.element)) groups[occ.element].push_back(occ);
    }
    if (groups.size() < 2) continue;
    RetrievedDocument r{&doc, groups.size(), {}};
    for (auto& [ref, spans] : groups) {
      std::sort(spans.begin(), spans.end(),
                [](const Occurrence& x, const Occurrence& y) { return std::tie(x.start, x.end) < std::tie(y.start, y.end); });
      r.highlights.push_back({ref, std::move(spans)});
    }
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const RetrievedDocument& x, const RetrievedDocument& y) {
    if (x.member_count != y.member_count) return x.member_count > y.member_count;
    return x.document->doc_id < y.document->doc_id;
  });
  return out;
}

const DocumentPanel& Workspace::open_documents(const std::string& rv_id, const std::string& relationship_id) {
  auto docs = retrieve_documents(rv_id, relationship_id);
  DocumentPanel dp{next_panel_id("docs"), rv_id, relationship_id, {}};
  for (const auto& d : docs) dp.doc_ids.push_back(d.document->doc_id);
  place_panel(dp.panel_id, PanelKind::document, kDocPanelWidth, kDocPanelHeight);
  document_panels_.push_back(std::move(dp));
  return document_panels_.back();
}

LinkSet Workspace::four_way_search(const Origin& origin) const {
  LinkSet out{origin, {}, {}, {}};

  if (const auto* e = std::get_if<ElementRef>(&origin)) {
    if (!dataset_->contains(*e)) {
      throw Error(Errc::unknown_origin, "unknown element " + to_string(*e),
                  {{"view_id", e->view_id}, {"element_id", e->element_id}});
    }
    auto add = [&](const ElementRef& ref, LinkKind kind) {
      if (ref == *e) return;
      (ref.view_id == e->view_id ? out.same_view_elements : out.cross_view_elements).insert({ref, kind});
    };

    for (const auto& [pair, biclusters] : dataset_biclusters_) {
      if (pair.first != e->view_id && pair.second != e->view_id) continue;
      const std::string& other = pair.first == e->view_id ? pair.second : pair.first;

      // Direct relations in the matrix.
      const auto& m = dataset_->relation_matrix(pair.first, pair.second);
      if (pair.first == e->view_id) {
        if (auto r = m.row_index(e->element_id)) {
          for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.at(*r, c)) add({other, m.col_ids()[c]}, LinkKind::automatic);
          }
        }
      } else if (auto c = m.col_index(e->element_id)) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
          if (m.at(r, *c)) add({other, m.row_ids()[r]}, LinkKind::automatic);
        }
      }

      for (const auto& b : biclusters) {
        const auto* own = b.side(e->view_id);
        if (!std::binary_search(own->begin(), own->end(), e->element_id)) continue;
        for (const auto& id : *own) add({e->view_id, id}, LinkKind::automatic);
        for (const auto& id : *b.side(other)) add({other, id}, LinkKind::automatic);
      }
    }

    for (const auto& [rv_id, rv] : rvs_) {
      for (const auto& r : rv.relationships) {
        if (!r.contains(*e)) continue;
        out.related_relationships.insert({{rv_id, r.id}, "T3"});
        for (const auto& m : r.members) add(m, LinkKind::automatic);
      }
    }

    for (const auto& [a, b] : manual_links_) {
      if (a == *e) add(b, LinkKind::manual);
      else if (b == *e) add(a, LinkKind::manual);
    }
    return out;
  }

  const auto& ref = std::get<RelationshipRef>(origin);
  auto rv_it = rvs_.find(ref.rv_id);
  const Relationship* rel = rv_it == rvs_.end() ? nullptr : rv_it->second.find(ref.relationship_id);
  if (rel == nullptr) {
    throw Error(Errc::unknown_origin, "unknown relationship " + ref.rv_id + "/" + ref.relationship_id,
                {{"rv_id", ref.rv_id}, {"relationship_id", ref.relationship_id}});
  }
  for (const auto& m : rel->members) out.cross_view_elements.insert({m, LinkKind::automatic});

  // Nearest neighbours in the same relationship-view.
  const auto& rv = rv_it->second;
  std::vector<std::pair<double, std::size_t>> near;
  for (std::size_t i = 0; i < rv.relationships.size(); ++i) {
    const auto& other = rv.relationships[i];
    if (other.id == rel->id) continue;
    near.emplace_back(jaccard_distance(rel->members, other.members), i);
  }
  std::sort(near.begin(), near.end());
  for (std::size_t k = 0; k < near.size() && k < kNeighborCount; ++k) {
    out.related_relationships.insert({{rv.rv_id, rv.relationships[near[k].second].id}, "T4"});
  }

  for (const auto& [other_id, other_rv] : rvs_) {
    if (other_id == rv.rv_id) continue;
    for (const auto& r : other_rv.relationships) {
      bool shares = std::any_of(rel->members.begin(), rel->members.end(), [&](const ElementRef& m) { return r.contains(m); });
      if (shares) out.related_relationships.insert({{other_id, r.id}, "T6"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

json relationship_json(const Relationship& r) {
  return std::visit([](const auto& c) { return to_json(c); }, r.content);
}

json rv_json(const RelationshipView& rv) {
  json rels = json::array();
  for (const auto& r : rv.relationships) rels.push_back(relationship_json(r));
  json states = json::object();
  for (const auto& [id, st] : rv.states) states[id] = std::string(to_string(st));
  json modes = json::object();
  json positions = json::object();
  for (const auto& r : rv.relationships) {
    modes[r.id] = std::string(to_string(rv.mode(r.id)));
    auto p = rv.position(r.id);
    positions[r.id] = {p.x, p.y};
  }
  json out{{"rv_id", rv.rv_id},
           {"level", std::string(to_string(rv.level))},
           {"source_views", rv.source_views},
           {"threshold", rv.threshold ? json(*rv.threshold) : json(nullptr)},
           {"relationships", rels},
           {"layout", to_json(rv.layout)},
           {"default_display_mode", std::string(to_string(rv.default_mode))},
           {"display_modes", modes},
           {"positions", positions},
           {"manually_edited", rv.manually_edited},
           {"states", states}};
  out["diagnostic"] = rv.diagnostic ? json{{"code", rv.diagnostic->code}, {"message", rv.diagnostic->message}} : json(nullptr);
  return out;
}

}  // namespace

json relationship_view_json(const RelationshipView& rv) { return rv_json(rv); }

json to_json(const LinkSet& links) {
  json origin;
  if (const auto* e = std::get_if<ElementRef>(&links.origin)) {
    origin = to_json(*e);
  } else {
    const auto& r = std::get<RelationshipRef>(links.origin);
    origin = {{"rv_id", r.rv_id}, {"relationship_id", r.relationship_id}};
  }
  auto elements = [](const std::set<LinkedElement>& set) {
    json out = json::array();
    for (const auto& e : set) {
      json item = to_json(e.ref);
      item["link_kind"] = std::string(to_string(e.kind));
      out.push_back(std::move(item));
    }
    return out;
  };
  json related = json::array();
  for (const auto& r : links.related_relationships) {
    related.push_back({{"rv_id", r.ref.rv_id}, {"relationship_id", r.ref.relationship_id}, {"task", r.task},
                       {"link_kind", std::string(to_string(LinkKind::automatic))}});
  }
  return {{"origin", origin},
          {"same_view_elements", elements(links.same_view_elements)},
          {"cross_view_elements", elements(links.cross_view_elements)},
          {"related_relationships", related}};
}

json to_json(const RetrievedDocument& doc) {
  json highlights = json::array();
  for (const auto& h : doc.highlights) {
    json spans = json::array();
    for (const auto& occ : h.spans) {
      spans.push_back({{"start", occ.start}, {"end", occ.end}, {"text", std::string(doc.document->span_text(occ))}});
    }
    json group = to_json(h.element);
    group["spans"] = spans;
    highlights.push_back(std::move(group));
  }
  return {{"doc_id", doc.document->doc_id},
          {"title", doc.document->title},
          {"text", doc.document->text},
          {"member_count", doc.member_count},
          {"highlights", highlights}};
}

Origin origin_from_json(const json& j) {
  if (j.is_object() && j.contains("rv_id")) {
    if (!j["rv_id"].is_string() || !j.contains("relationship_id") || !j["relationship_id"].is_string()) {
      throw Error(Errc::invalid_argument, "relationship origin needs string rv_id and relationship_id");
    }
    return RelationshipRef{j["rv_id"].get<std::string>(), j["relationship_id"].get<std::string>()};
  }
  return element_ref_from_json(j);
}

json Workspace::snapshot() const {
  json panels = json::object();
  for (const auto& p : panels_) {
    panels[p.panel_id] = {{"kind", std::string(to_string(p.kind))},
                          {"position", {p.position.x, p.position.y}},
                          {"size", {p.width, p.height}},
                          {"pinned", p.pinned}};
  }
  json rvs = json::object();
  for (const auto& [id, rv] : rvs_) rvs[id] = rv_json(rv);
  json links = json::array();
  for (const auto& [a, b] : manual_links_) links.push_back({to_json(a), to_json(b)});
  json docs = json::array();
  for (const auto& d : document_panels_) {
    docs.push_back({{"panel_id", d.panel_id}, {"rv_id", d.rv_id}, {"relationship_id", d.relationship_id}, {"doc_ids", d.doc_ids}});
  }
  return {{"dataset_id", dataset_->dataset_id()},
          {"panels", panels},
          {"relationship_views", rvs},
          {"manual_links", links},
          {"document_panels", docs}};
}

// ---------------------------------------------------------------------------

namespace {

const json& arg(const json& args, const char* key) {
  auto it = args.find(key);
  if (it == args.end()) throw Error(Errc::invalid_argument, std::string("missing argument '") + key + "'");
  return *it;
}

std::string string_arg(const json& args, const char* key) {
  const json& v = arg(args, key);
  if (!v.is_string()) throw Error(Errc::invalid_argument, std::string("argument '") + key + "' must be a string");
  return v.get<std::string>();
}

double number_arg(const json& args, const char* key) {
  const json& v = arg(args, key);
  if (!v.is_number()) throw Error(Errc::invalid_argument, std::string("argument '") + key + "' must be a number");
  return v.get<double>();
}

Point2 point_arg(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(Errc::invalid_argument, "positions are [x, y] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

json apply_command(Workspace& ws, const std::string& op, const json& args) {
  if (!args.is_object()) throw Error(Errc::invalid_argument, "command args must be an object");

  if (op == "create_relationship_view") {
    const json& views = arg(args, "views");
    if (!views.is_array()) throw Error(Errc::invalid_argument, "views must be an array of view ids");
    std::vector<std::string> ids;
    for (const auto& v : views) {
      if (!v.is_string()) throw Error(Errc::invalid_argument, "views must be an array of view ids");
      ids.push_back(v.get<std::string>());
    }
    std::optional<double> threshold;
    if (auto it = args.find("threshold"); it != args.end() && !it->is_null()) threshold = number_arg(args, "threshold");
    return rv_json(ws.create_relationship_view(ids, threshold));
  }
  if (op == "set_threshold") {
    return rv_json(ws.set_threshold(string_arg(args, "rv_id"), number_arg(args, "threshold")));
  }
  if (op == "set_state") {
    return rv_json(ws.set_state(string_arg(args, "rv_id"), string_arg(args, "relationship_id"),
                                parse_state(string_arg(args, "state"))));
  }
  if (op == "mark") {
    return rv_json(ws.set_state(string_arg(args, "rv_id"), string_arg(args, "relationship_id"), RelState::marked));
  }
  if (op == "set_display_mode") {
    std::optional<std::string> rel;
    if (auto it = args.find("relationship_id"); it != args.end() && !it->is_null()) rel = string_arg(args, "relationship_id");
    return rv_json(ws.set_display_mode(string_arg(args, "rv_id"), rel, parse_display_mode(string_arg(args, "mode"))));
  }
  if (op == "move_relationships") {
    const json& pos = arg(args, "positions");
    if (!pos.is_object()) throw Error(Errc::invalid_argument, "positions must map relationship ids to [x, y]");
    std::map<std::string, Point2> positions;
    for (const auto& [id, p] : pos.items()) positions[id] = point_arg(p);
    return rv_json(ws.move_relationships(string_arg(args, "rv_id"), positions));
  }
  if (op == "drag_panel") {
    json moved = json::array();
    for (const auto& [id, p] : ws.drag_panel(string_arg(args, "panel_id"), number_arg(args, "dx"), number_arg(args, "dy"))) {
      moved.push_back({{"panel_id", id}, {"position", {p.x, p.y}}});
    }
    return {{"moved", moved}};
  }
  if (op == "pin") {
    const json& on = arg(args, "on");
    if (!on.is_boolean()) throw Error(Errc::invalid_argument, "argument 'on' must be a boolean");
    auto id = string_arg(args, "panel_id");
    ws.pin(id, on.get<bool>());
    return {{"panel_id", id}, {"pinned", on}};
  }
  if (op == "resize") {
    auto id = string_arg(args, "panel_id");
    ws.resize(id, number_arg(args, "w"), number_arg(args, "h"));
    const auto& p = ws.panel(id);
    return {{"panel_id", id}, {"size", {p.width, p.height}}};
  }
  if (op == "close_panel") {
    auto id = string_arg(args, "panel_id");
    ws.close_panel(id);
    return {{"closed", id}};
  }
  if (op == "add_manual_link") {
    auto a = element_ref_from_json(arg(args, "a"));
    auto b = element_ref_from_json(arg(args, "b"));
    bool added = ws.add_manual_link(a, b);
    return {{"added", added}, {"link", {to_json(std::min(a, b)), to_json(std::max(a, b))}}};
  }
  if (op == "open_documents") {
    const auto& dp = ws.open_documents(string_arg(args, "rv_id"), string_arg(args, "relationship_id"));
    return {{"panel_id", dp.panel_id}, {"doc_ids", dp.doc_ids}};
  }
  throw Error(Errc::unknown_command, "unknown command '" + op + "'", {{"op", op}});
}

json command_to_json(const Command& c) { return {{"seq", c.seq}, {"op", c.op}, {"args", c.args}}; }

Command command_from_json(const json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
    throw Error(Errc::invalid_argument, "a command is an object with string 'op' and object 'args'");
  }
  Command c;
  c.op = j["op"].get<std::string>();
  c.args = j.value("args", json::object());
  if (auto it = j.find("seq"); it != j.end() && it->is_number_unsigned()) c.seq = it->get<std::uint64_t>();
  return c;
}

Session::Session(std::shared_ptr<const Dataset> dataset) : workspace_(std::move(dataset)) {}

json Session::execute(const std::string& op, const json& args) {
  std::unique_lock lock(mutex_);
  json result = apply_command(workspace_, op, args);
  Command c{log_.size() + 1, op, args};
  log_.push_back(std::move(c));
  return {{"seq", log_.back().seq}, {"op", op}, {"result", std::move(result)}};
}

json Session::snapshot() const {
  std::shared_lock lock(mutex_);
  return workspace_.snapshot();
}

std::vector<Command> Session::log() const {
  std::shared_lock lock(mutex_);
  return log_;
}

std::unique_ptr<Session> Session::replay(std::shared_ptr<const Dataset> dataset, std::span<const Command> commands) {
  auto session = std::make_unique<Session>(std::move(dataset));
  for (const auto& c : commands) session->execute(c.op, c.args);
  return session;
}

}  // namespace xview
