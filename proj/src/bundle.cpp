#include "xview/bundle.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "xview/error.hpp"

namespace xview {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(Errc::parse_error, where + ": " + what, {{"path", where}});
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) parse_fail(where + "." + key, "expected string");
  return v.get<std::string>();
}

std::size_t require_offset(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) parse_fail(where + "." + key, "expected integer");
  auto n = v.get<std::int64_t>();
  if (n < 0) {
    throw Error(Errc::span_out_of_bounds, where + "." + key + ": negative offset", {{"path", where}});
  }
  return static_cast<std::size_t>(n);
}

void require_object(const json& v, const std::string& where) {
  if (!v.is_object()) parse_fail(where, "expected object");
}

void require_array(const json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected array");
}

AttrValue parse_attr(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  parse_fail(where, "attribute values must be strings or numbers");
}

RawView parse_view(const json& v, const std::string& where) {
  require_object(v, where);
  RawView view;
  view.view_id = require_string(v, "view_id", where);
  auto type_text = require_string(v, "view_type", where);
  auto type = parse_view_type(type_text);
  if (!type) parse_fail(where + ".view_type", "unknown view type '" + type_text + "'");
  view.view_type = *type;
  view.label = require_string(v, "label", where);

  const json& elements = require(v, "elements", where);
  require_array(elements, where + ".elements");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string ew = where + ".elements[" + std::to_string(i) + "]";
    const json& e = elements[i];
    require_object(e, ew);
    VisualElement element;
    element.element_id = require_string(e, "element_id", ew);
    element.view_id = view.view_id;
    element.label = require_string(e, "label", ew);
    if (auto it = e.find("attrs"); it != e.end()) {
      require_object(*it, ew + ".attrs");
      for (const auto& [key, value] : it->items()) element.attrs[key] = parse_attr(value, ew + ".attrs." + key);
    }
    view.elements.push_back(std::move(element));
  }
  return view;
}

RelationSpec parse_relation(const json& v, const std::string& where) {
  require_object(v, where);
  RelationSpec rel;
  rel.view_a = require_string(v, "view_a", where);
  rel.view_b = require_string(v, "view_b", where);
  auto edges = v.find("edges");
  auto derive = v.find("derive");
  if ((edges == v.end()) == (derive == v.end())) parse_fail(where, "exactly one of 'edges' or 'derive' is required");
  if (derive != v.end()) {
    if (!derive->is_string() || derive->get<std::string>() != "cooccurrence") {
      parse_fail(where + ".derive", "only \"cooccurrence\" is supported");
    }
    rel.derive_cooccurrence = true;
    return rel;
  }
  require_array(*edges, where + ".edges");
  for (std::size_t i = 0; i < edges->size(); ++i) {
    const json& e = (*edges)[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      parse_fail(where + ".edges[" + std::to_string(i) + "]", "expected [string, string]");
    }
    rel.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return rel;
}

Document parse_document(const json& v, const std::string& where) {
  require_object(v, where);
  Document doc;
  doc.doc_id = require_string(v, "doc_id", where);
  doc.title = require_string(v, "title", where);
  doc.text = require_string(v, "text", where);
  const json& occs = require(v, "occurrences", where);
  require_array(occs, where + ".occurrences");
  for (std::size_t i = 0; i < occs.size(); ++i) {
    const std::string ow = where + ".occurrences[" + std::to_string(i) + "]";
    require_object(occs[i], ow);
    Occurrence occ;
    occ.element.view_id = require_string(occs[i], "view_id", ow);
    occ.element.element_id = require_string(occs[i], "element_id", ow);
    occ.start = require_offset(occs[i], "start", ow);
    occ.end = require_offset(occs[i], "end", ow);
    doc.occurrences.push_back(std::move(occ));
  }
  return doc;
}

void validate(const DatasetBundle& bundle) {
  std::map<std::string, TabulatedView> views;
  for (std::size_t i = 0; i < bundle.views.size(); ++i) {
    const auto& raw = bundle.views[i];
    auto tab = tabulate_view(raw, i);
    if (!views.emplace(raw.view_id, std::move(tab)).second) {
      throw Error(Errc::duplicate_view_id, "duplicate view id '" + raw.view_id + "'", {{"view_id", raw.view_id}});
    }
  }

  auto resolve_element = [&](const std::string& view_id, const std::string& element_id, const std::string& where) {
    auto it = views.find(view_id);
    if (it == views.end()) {
      throw Error(Errc::dangling_reference, where + ": unknown view '" + view_id + "'", {{"view_id", view_id}});
    }
    if (it->second.find(element_id) == nullptr) {
      throw Error(Errc::dangling_reference, where + ": unknown element '" + element_id + "' in view '" + view_id + "'",
                  {{"view_id", view_id}, {"element_id", element_id}});
    }
  };

  std::set<std::pair<std::string, std::string>> seen_pairs;
  for (std::size_t i = 0; i < bundle.relations.size(); ++i) {
    const auto& rel = bundle.relations[i];
    const std::string where = "relations[" + std::to_string(i) + "]";
    for (const auto* id : {&rel.view_a, &rel.view_b}) {
      if (!views.contains(*id)) {
        throw Error(Errc::dangling_reference, where + ": unknown view '" + *id + "'", {{"view_id", *id}});
      }
    }
    if (rel.view_a == rel.view_b) {
      throw Error(Errc::same_view_pair, where + ": relation between a view and itself", {{"view_id", rel.view_a}});
    }
    auto key = std::minmax(rel.view_a, rel.view_b);
    if (!seen_pairs.emplace(key.first, key.second).second) {
      throw Error(Errc::duplicate_relation, where + ": second relation for pair " + rel.view_a + "-" + rel.view_b);
    }
    if (rel.derive_cooccurrence && (!bundle.documents || bundle.documents->empty())) {
      throw Error(Errc::parse_error, where + ": co-occurrence derivation needs documents", {{"path", where}});
    }
    for (const auto& [ea, eb] : rel.edges) {
      resolve_element(rel.view_a, ea, where);
      resolve_element(rel.view_b, eb, where);
    }
  }

  if (!bundle.documents) return;
  std::set<std::string> doc_ids;
  for (std::size_t d = 0; d < bundle.documents->size(); ++d) {
    const auto& doc = (*bundle.documents)[d];
    const std::string where = "documents[" + std::to_string(d) + "]";
    if (!doc_ids.insert(doc.doc_id).second) parse_fail(where, "duplicate doc_id '" + doc.doc_id + "'");
    for (std::size_t i = 0; i < doc.occurrences.size(); ++i) {
      const auto& occ = doc.occurrences[i];
      const std::string ow = where + ".occurrences[" + std::to_string(i) + "]";
      resolve_element(occ.element.view_id, occ.element.element_id, ow);
      if (!(occ.start < occ.end && occ.end <= doc.text.size())) {
        throw Error(Errc::span_out_of_bounds,
                    ow + ": span [" + std::to_string(occ.start) + ", " + std::to_string(occ.end) +
                        ") outside text of length " + std::to_string(doc.text.size()),
                    {{"doc_id", doc.doc_id}});
      }
    }
  }
}

}  // namespace

DatasetBundle bundle_from_json(const json& doc) {
  require_object(doc, "$");
  static const std::set<std::string> known = {"dataset_id", "views", "relations", "documents"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) parse_fail("$", "unknown top-level key '" + key + "'");
  }

  DatasetBundle bundle;
  bundle.dataset_id = require_string(doc, "dataset_id", "$");
  const json& views = require(doc, "views", "$");
  require_array(views, "views");
  for (std::size_t i = 0; i < views.size(); ++i) bundle.views.push_back(parse_view(views[i], "views[" + std::to_string(i) + "]"));

  if (auto it = doc.find("relations"); it != doc.end()) {
    require_array(*it, "relations");
    for (std::size_t i = 0; i < it->size(); ++i) {
      bundle.relations.push_back(parse_relation((*it)[i], "relations[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = doc.find("documents"); it != doc.end()) {
    require_array(*it, "documents");
    std::vector<Document> docs;
    for (std::size_t i = 0; i < it->size(); ++i) docs.push_back(parse_document((*it)[i], "documents[" + std::to_string(i) + "]"));
    bundle.documents = std::move(docs);
  }

  validate(bundle);
  return bundle;
}

DatasetBundle parse_bundle(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what(), {{"position", std::to_string(e.byte)}});
  }
  return bundle_from_json(doc);
}

DatasetBundle load_bundle(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_bundle(buffer.str());
}

DatasetBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open bundle '" + path.string() + "'", {{"path", path.string()}});
  return load_bundle(in);
}

json bundle_to_json(const DatasetBundle& bundle) {
  json out;
  out["dataset_id"] = bundle.dataset_id;
  out["views"] = json::array();
  for (const auto& v : bundle.views) {
    json view{{"view_id", v.view_id}, {"view_type", std::string(to_string(v.view_type))}, {"label", v.label}};
    view["elements"] = json::array();
    for (const auto& e : v.elements) {
      json attrs = json::object();
      for (const auto& [key, value] : e.attrs) {
        std::visit([&](const auto& x) { attrs[key] = x; }, value);
      }
      view["elements"].push_back({{"element_id", e.element_id}, {"label", e.label}, {"attrs", attrs}});
    }
    out["views"].push_back(std::move(view));
  }
  out["relations"] = json::array();
  for (const auto& r : bundle.relations) {
    json rel{{"view_a", r.view_a}, {"view_b", r.view_b}};
    if (r.derive_cooccurrence) {
      rel["derive"] = "cooccurrence";
    } else {
      rel["edges"] = json::array();
      for (const auto& [a, b] : r.edges) rel["edges"].push_back({a, b});
    }
    out["relations"].push_back(std::move(rel));
  }
  if (bundle.documents) {
    out["documents"] = json::array();
    for (const auto& d : *bundle.documents) {
      json doc{{"doc_id", d.doc_id}, {"title", d.title}, {"text", d.text}, {"occurrences", json::array()}};
      for (const auto& o : d.occurrences) {
        doc["occurrences"].push_back(
            {{"view_id", o.element.view_id}, {"element_id", o.element.element_id}, {"start", o.start}, {"end", o.end}});
      }
      out["documents"].push_back(std::move(doc));
    }
  }
  return out;
}

std::string serialize_bundle(const DatasetBundle& bundle) { return bundle_to_json(bundle).dump(); }

}  // namespace xview
