#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xview/execution.hpp"
#include "xview/model.hpp"

namespace xview {

// A closed bicluster (maximal biclique) of one view-pair relation matrix.
struct Bicluster {
  std::string bicluster_id;  // content hash of the fields below
  std::string view_a;
  std::string view_b;
  std::vector<std::string> elements_a;  // sorted
  std::vector<std::string> elements_b;  // sorted

  // Element set on `view_id`, or nullptr when the bicluster does not span it.
  const std::vector<std::string>* side(std::string_view view_id) const;
  std::size_t size() const { return elements_a.size() + elements_b.size(); }

  bool operator==(const Bicluster&) const = default;
};

Bicluster make_bicluster(std::string view_a, std::string view_b, std::vector<std::string> elements_a,
                         std::vector<std::string> elements_b);

// Lexicographic on elements_a, then elements_b.
bool canonical_less(const Bicluster& x, const Bicluster& y);

struct MinerOptions {
  std::size_t min_rows = 2;
  std::size_t min_cols = 2;
  Execution exec = Execution::parallel;
};

// Every closed bicluster with at least min_rows rows and min_cols columns,
// canonically sorted. Closed column sets are enumerated by prefix-preserving
// closure extension over bitset row sets, so each one is reached exactly once.
// A matrix with no rows or columns yields an empty list.
std::vector<Bicluster> enumerate_closed_biclusters(const RelationMatrix& matrix, const MinerOptions& options = {});

}  // namespace xview
