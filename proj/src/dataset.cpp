#include "xview/dataset.hpp"

#include <algorithm>
#include <set>

#include "xview/cooccurrence.hpp"
#include "xview/error.hpp"

namespace xview {

Dataset Dataset::from_bundle(const DatasetBundle& bundle) {
  Dataset ds;
  ds.dataset_id_ = bundle.dataset_id;
  ds.views_.reserve(bundle.views.size());
  for (std::size_t i = 0; i < bundle.views.size(); ++i) ds.views_.push_back(tabulate_view(bundle.views[i], i));
  if (bundle.documents) ds.documents_ = *bundle.documents;

  for (const auto& rel : bundle.relations) {
    const auto& a = ds.view(rel.view_a);
    const auto& b = ds.view(rel.view_b);
    std::vector<Edge> edges =
        rel.derive_cooccurrence ? derive_cooccurrence(ds.documents_, rel.view_a, rel.view_b) : rel.edges;
    JointTable joint = build_joint_table(a, b, edges);
    ViewPair key{joint.view_a, joint.view_b};
    ds.joints_.emplace(std::move(key), std::move(joint));
  }

  for (std::size_t i = 0; i < ds.views_.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.views_.size(); ++j) {
      const auto& a = ds.views_[i];
      const auto& b = ds.views_[j];
      ViewPair key{a.id(), b.id()};
      auto it = ds.joints_.find(key);
      JointTable empty{a.id(), b.id(), {}};
      ds.matrices_.emplace(key, to_relation_matrix(it == ds.joints_.end() ? empty : it->second, a, b));
    }
  }
  return ds;
}

const TabulatedView* Dataset::find_view(std::string_view view_id) const {
  for (const auto& v : views_) {
    if (v.id() == view_id) return &v;
  }
  return nullptr;
}

const TabulatedView& Dataset::view(std::string_view view_id) const {
  const auto* v = find_view(view_id);
  if (v == nullptr) {
    throw Error(Errc::unknown_view, "unknown view '" + std::string(view_id) + "'", {{"view_id", std::string(view_id)}});
  }
  return *v;
}

const VisualElement* Dataset::find_element(const ElementRef& ref) const {
  const auto* v = find_view(ref.view_id);
  return v == nullptr ? nullptr : v->find(ref.element_id);
}

std::vector<std::string> Dataset::canonical_views(std::span<const std::string> view_ids) const {
  std::vector<const TabulatedView*> found;
  std::set<std::string_view> seen;
  for (const auto& id : view_ids) {
    if (!seen.insert(id).second) throw Error(Errc::invalid_argument, "view '" + id + "' requested twice");
    found.push_back(&view(id));
  }
  std::sort(found.begin(), found.end(), [](const TabulatedView* x, const TabulatedView* y) {
    return x->descriptor.insertion_index < y->descriptor.insertion_index;
  });
  std::vector<std::string> out;
  out.reserve(found.size());
  for (const auto* v : found) out.push_back(v->id());
  return out;
}

ViewPair Dataset::canonical_pair(std::string_view a, std::string_view b) const {
  const auto& va = view(a);
  const auto& vb = view(b);
  if (va.id() == vb.id()) throw Error(Errc::same_view_pair, "view pair needs two distinct views: " + va.id());
  if (vb.descriptor.insertion_index < va.descriptor.insertion_index) return {vb.id(), va.id()};
  return {va.id(), vb.id()};
}

const JointTable* Dataset::joint_table(std::string_view a, std::string_view b) const {
  auto it = joints_.find(canonical_pair(a, b));
  return it == joints_.end() ? nullptr : &it->second;
}

const RelationMatrix& Dataset::relation_matrix(std::string_view a, std::string_view b) const {
  return matrices_.at(canonical_pair(a, b));
}

}  // namespace xview
