#include "xview/cooccurrence.hpp"

#include <algorithm>
#include <omp.h>

#include "xview/error.hpp"

namespace xview {

namespace {

void document_edges(const Document& doc, std::string_view view_a, std::string_view view_b, std::vector<Edge>& out) {
  std::vector<std::string> in_a;
  std::vector<std::string> in_b;
  for (const auto& occ : doc.occurrences) {
    if (occ.element.view_id == view_a) in_a.push_back(occ.element.element_id);
    else if (occ.element.view_id == view_b) in_b.push_back(occ.element.element_id);
  }
  std::sort(in_a.begin(), in_a.end());
  in_a.erase(std::unique(in_a.begin(), in_a.end()), in_a.end());
  std::sort(in_b.begin(), in_b.end());
  in_b.erase(std::unique(in_b.begin(), in_b.end()), in_b.end());
  for (const auto& a : in_a) {
    for (const auto& b : in_b) out.emplace_back(a, b);
  }
}

void canonicalize(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

std::vector<Edge> derive_cooccurrence(std::span<const Document> documents, std::string_view view_a,
                                      std::string_view view_b, Execution exec) {
  if (view_a == view_b) throw Error(Errc::same_view_pair, "co-occurrence needs two distinct views");

  std::vector<Edge> edges;
  if (exec == Execution::serial) {
    for (const auto& doc : documents) document_edges(doc, view_a, view_b, edges);
    canonicalize(edges);
    return edges;
  }

  const auto n = static_cast<std::int64_t>(documents.size());
  std::vector<std::vector<Edge>> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) document_edges(documents[static_cast<std::size_t>(i)], view_a, view_b, local);
    canonicalize(local);
  }
  for (auto& p : partial) edges.insert(edges.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  canonicalize(edges);
  return edges;
}

}  // namespace xview
