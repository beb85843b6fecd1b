#pragma once

// Dataset bundle: the single JSON document that carries views, elements,
// pairwise relations and optional pre-annotated documents.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xview/model.hpp"

namespace xview {

struct Occurrence {
  ElementRef element;
  std::size_t start = 0;  // byte offsets into Document::text, [start, end)
  std::size_t end = 0;

  bool operator==(const Occurrence&) const = default;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::string text;
  std::vector<Occurrence> occurrences;

  std::string_view span_text(const Occurrence& occ) const {
    return std::string_view(text).substr(occ.start, occ.end - occ.start);
  }

  bool operator==(const Document&) const = default;
};

struct RelationSpec {
  std::string view_a;
  std::string view_b;
  std::vector<Edge> edges;           // oriented (view_a element, view_b element)
  bool derive_cooccurrence = false;  // edges ignored when set

  bool operator==(const RelationSpec&) const = default;
};

struct DatasetBundle {
  std::string dataset_id;
  std::vector<RawView> views;
  std::vector<RelationSpec> relations;
  std::optional<std::vector<Document>> documents;

  bool operator==(const DatasetBundle&) const = default;
};

// Parses and fully validates a bundle. Throws ParseError (with byte
// position when the JSON itself is malformed), DanglingReference,
// SpanOutOfBounds, DuplicateViewId, DuplicateRelation, SameViewPair and the
// tabulation errors.
DatasetBundle parse_bundle(std::string_view text);
DatasetBundle bundle_from_json(const nlohmann::json& doc);
DatasetBundle load_bundle(const std::filesystem::path& path);
DatasetBundle load_bundle(std::istream& in);

nlohmann::json bundle_to_json(const DatasetBundle& bundle);
std::string serialize_bundle(const DatasetBundle& bundle);

}  // namespace xview
