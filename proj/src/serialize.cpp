#include "xview/serialize.hpp"

#include "xview/error.hpp"

namespace xview {

using nlohmann::json;

json to_json(const ElementRef& ref) { return {{"view_id", ref.view_id}, {"element_id", ref.element_id}}; }

ElementRef element_ref_from_json(const json& j) {
  if (!j.is_object() || !j.contains("view_id") || !j.contains("element_id") || !j["view_id"].is_string() ||
      !j["element_id"].is_string()) {
    throw Error(Errc::invalid_argument, "element reference needs string view_id and element_id");
  }
  return {j["view_id"].get<std::string>(), j["element_id"].get<std::string>()};
}

json to_json(const Bicluster& b) {
  return {{"id", b.bicluster_id},
          {"view_a", b.view_a},
          {"view_b", b.view_b},
          {"elements_a", b.elements_a},
          {"elements_b", b.elements_b}};
}

json to_json(const BiclusterChain& c) {
  json links = json::array();
  for (const auto& l : c.links) links.push_back(to_json(l));
  json sets = json::object();
  for (const auto& [view, ids] : c.entity_sets) sets[view] = ids;
  return {{"id", c.chain_id}, {"sequence", c.sequence.views}, {"links", links}, {"entity_sets", sets}, {"scores", c.scores}};
}

json to_json(const LayoutResult& layout) {
  json coords = json::object();
  for (const auto& [id, p] : layout.coordinates) coords[id] = {p.x, p.y};
  json radii = json::object();
  for (const auto& [id, r] : layout.radii) radii[id] = r;
  json bars = json::object();
  for (const auto& [id, list] : layout.bar_summaries) {
    json entry = json::array();
    for (const auto& bar : list) entry.push_back({{"view_id", bar.view_id}, {"count", bar.count}});
    bars[id] = entry;
  }
  return {{"coordinates", coords}, {"radii", radii}, {"bars", bars}, {"bar_reference_max", layout.bar_reference_max}};
}

json to_json(const TabulatedView& view) {
  json elements = json::array();
  for (const auto& e : view.elements) {
    json attrs = json::object();
    for (const auto& [key, value] : e.attrs) {
      std::visit([&](const auto& x) { attrs[key] = x; }, value);
    }
    elements.push_back({{"element_id", e.element_id}, {"label", e.label}, {"attrs", attrs}});
  }
  return {{"view_id", view.id()},
          {"view_type", std::string(to_string(view.descriptor.view_type))},
          {"label", view.descriptor.label},
          {"insertion_index", view.descriptor.insertion_index},
          {"elements", elements}};
}

json biclusters_json(std::span<const Bicluster> biclusters) {
  json out = json::array();
  for (const auto& b : biclusters) out.push_back(to_json(b));
  return out;
}

json chains_json(std::span<const BiclusterChain> chains) {
  json out = json::array();
  for (const auto& c : chains) out.push_back(to_json(c));
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(); }

}  // namespace xview
