#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xview/bundle.hpp"
#include "xview/model.hpp"

namespace xview {

// Immutable, validated dataset: tabulated views, canonical joint tables and
// a relation matrix for every unordered view pair (all-zero when the bundle
// relates nothing across that pair).
class Dataset {
 public:
  static Dataset from_bundle(const DatasetBundle& bundle);

  const std::string& dataset_id() const { return dataset_id_; }
  const std::vector<TabulatedView>& views() const { return views_; }
  const TabulatedView* find_view(std::string_view view_id) const;
  const TabulatedView& view(std::string_view view_id) const;  // throws UnknownView
  const VisualElement* find_element(const ElementRef& ref) const;
  bool contains(const ElementRef& ref) const { return find_element(ref) != nullptr; }

  // Sorts by insertion index. Throws UnknownView, or InvalidArgument on a
  // repeated id.
  std::vector<std::string> canonical_views(std::span<const std::string> view_ids) const;
  ViewPair canonical_pair(std::string_view a, std::string_view b) const;

  const JointTable* joint_table(std::string_view a, std::string_view b) const;
  const RelationMatrix& relation_matrix(std::string_view a, std::string_view b) const;
  const std::map<ViewPair, RelationMatrix>& relation_matrices() const { return matrices_; }

  const std::vector<Document>& documents() const { return documents_; }
  bool has_documents() const { return !documents_.empty(); }

 private:
  std::string dataset_id_;
  std::vector<TabulatedView> views_;
  std::map<ViewPair, JointTable> joints_;
  std::map<ViewPair, RelationMatrix> matrices_;
  std::vector<Document> documents_;
};

}  // namespace xview
