#include "xview/model.hpp"

#include <algorithm>
#include <set>

#include "xview/error.hpp"

namespace xview {

std::string_view to_string(ViewType type) {
  switch (type) {
    case ViewType::graph: return "graph";
    case ViewType::map: return "map";
    case ViewType::list: return "list";
    case ViewType::document: return "document";
    case ViewType::other: return "other";
  }
  return "other";
}

std::optional<ViewType> parse_view_type(std::string_view text) {
  for (ViewType t : {ViewType::graph, ViewType::map, ViewType::list, ViewType::document, ViewType::other}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::string to_string(const ElementRef& ref) { return ref.view_id + ":" + ref.element_id; }

const VisualElement* TabulatedView::find(std::string_view element_id) const {
  for (const auto& e : elements) {
    if (e.element_id == element_id) return &e;
  }
  return nullptr;
}

namespace {

std::span<const std::string_view> required_attrs(ViewType type) {
  static constexpr std::string_view map_keys[] = {"lat", "lon"};
  if (type == ViewType::map) return map_keys;
  return {};
}

}  // namespace

TabulatedView tabulate_view(const RawView& raw, std::size_t insertion_index) {
  TabulatedView out;
  out.descriptor = ViewDescriptor{raw.view_id, raw.view_type, raw.label, insertion_index};
  out.elements.reserve(raw.elements.size());

  std::set<std::string_view> seen;
  for (const auto& e : raw.elements) {
    if (!seen.insert(e.element_id).second) {
      throw Error(Errc::duplicate_element_id,
                  "duplicate element id '" + e.element_id + "' in view '" + raw.view_id + "'",
                  {{"view_id", raw.view_id}, {"element_id", e.element_id}});
    }
    for (auto key : required_attrs(raw.view_type)) {
      if (!e.attrs.contains(std::string(key))) {
        throw Error(Errc::missing_required_attr,
                    std::string(to_string(raw.view_type)) + " view '" + raw.view_id + "' element '" +
                        e.element_id + "' lacks attribute '" + std::string(key) + "'",
                    {{"view_type", std::string(to_string(raw.view_type))},
                     {"attribute", std::string(key)},
                     {"element_id", e.element_id}});
      }
    }
    VisualElement element = e;
    element.view_id = raw.view_id;
    out.elements.push_back(std::move(element));
  }
  return out;
}

JointTable build_joint_table(const TabulatedView& a, const TabulatedView& b, std::span<const Edge> edges) {
  if (a.id() == b.id()) throw Error(Errc::same_view_pair, "joint table needs two distinct views: " + a.id());

  for (const auto& [ea, eb] : edges) {
    if (a.find(ea) == nullptr) {
      throw Error(Errc::unknown_element, "unknown element '" + ea + "' in view '" + a.id() + "'",
                  {{"view_id", a.id()}, {"element_id", ea}});
    }
    if (b.find(eb) == nullptr) {
      throw Error(Errc::unknown_element, "unknown element '" + eb + "' in view '" + b.id() + "'",
                  {{"view_id", b.id()}, {"element_id", eb}});
    }
  }

  const bool flip = b.descriptor.insertion_index < a.descriptor.insertion_index;
  JointTable joint;
  joint.view_a = flip ? b.id() : a.id();
  joint.view_b = flip ? a.id() : b.id();
  joint.pairs.reserve(edges.size());
  for (const auto& [ea, eb] : edges) joint.pairs.emplace_back(flip ? Edge{eb, ea} : Edge{ea, eb});
  std::sort(joint.pairs.begin(), joint.pairs.end());
  joint.pairs.erase(std::unique(joint.pairs.begin(), joint.pairs.end()), joint.pairs.end());
  return joint;
}

RelationMatrix::RelationMatrix(std::string view_a, std::string view_b, std::vector<std::string> row_ids,
                               std::vector<std::string> col_ids)
    : view_a_(std::move(view_a)),
      view_b_(std::move(view_b)),
      row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)),
      cells_(row_ids_.size() * col_ids_.size(), 0) {}

std::size_t RelationMatrix::count_ones() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

std::optional<std::size_t> sorted_index(const std::vector<std::string>& ids, std::string_view id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

std::vector<std::string> sorted_ids(const TabulatedView& view) {
  std::vector<std::string> ids;
  ids.reserve(view.elements.size());
  for (const auto& e : view.elements) ids.push_back(e.element_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::optional<std::size_t> RelationMatrix::row_index(std::string_view id) const { return sorted_index(row_ids_, id); }
std::optional<std::size_t> RelationMatrix::col_index(std::string_view id) const { return sorted_index(col_ids_, id); }

RelationMatrix RelationMatrix::transposed() const {
  RelationMatrix t(view_b_, view_a_, col_ids_, row_ids_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) t.set(c, r, at(r, c));
  }
  return t;
}

RelationMatrix to_relation_matrix(const JointTable& joint, const TabulatedView& a, const TabulatedView& b) {
  const TabulatedView* row_view = &a;
  const TabulatedView* col_view = &b;
  if (a.id() == joint.view_b && b.id() == joint.view_a) std::swap(row_view, col_view);
  if (row_view->id() != joint.view_a || col_view->id() != joint.view_b) {
    throw Error(Errc::invalid_argument, "views do not match joint table " + joint.view_a + "-" + joint.view_b);
  }

  RelationMatrix m(joint.view_a, joint.view_b, sorted_ids(*row_view), sorted_ids(*col_view));
  for (const auto& [ea, eb] : joint.pairs) {
    auto r = m.row_index(ea);
    auto c = m.col_index(eb);
    if (!r || !c) {
      throw Error(Errc::unknown_element, "joint table pair (" + ea + ", " + eb + ") does not resolve");
    }
    m.set(*r, *c, true);
  }
  return m;
}

}  // namespace xview
