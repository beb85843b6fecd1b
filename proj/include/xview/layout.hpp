#pragma once

// Presentation geometry of a relationship-view: 2-D positions by classical
// MDS over Jaccard distances, circle radii and mini bar chart summaries.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "xview/execution.hpp"
#include "xview/model.hpp"

namespace xview {

inline constexpr double kDefaultMinRadius = 6.0;
inline constexpr double kDefaultMaxRadius = 30.0;

// What the layout needs to know about one bicluster or chain.
struct LayoutItem {
  std::string id;
  std::map<std::string, std::vector<std::string>> entity_sets;  // view -> sorted element ids

  std::vector<ElementRef> members() const;
  std::size_t count() const;
};

struct RelationshipVectors {
  std::vector<ElementRef> universe;  // sorted; shared by all rows
  std::vector<std::string> ids;
  std::vector<std::vector<std::uint8_t>> rows;  // rows[i][k] = 1 iff universe[k] in relationship i
};

// Throws EmptyInput for no relationships.
RelationshipVectors vectorize(std::span<const LayoutItem> items);

class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n = 0) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double d) {
    values_[i * n_ + j] = d;
    values_[j * n_ + i] = d;
  }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// Jaccard distance 1 - |x & y| / |x | y| between every pair of rows.
DistanceMatrix pairwise_distances(const RelationshipVectors& vectors, Execution exec = Execution::parallel);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

// Classical (Torgerson) MDS into the plane, unscaled. Each axis is flipped
// so its largest-magnitude coordinate is positive. Throws NonFiniteDistance.
std::vector<Point2> mds_2d(const DistanceMatrix& distances);

// Linear map of [count_min, count_max] onto [r_min, r_max]; the midpoint
// radius when the count range is degenerate. Throws OutOfRangeCount.
double radius(std::size_t count, std::size_t count_min, std::size_t count_max, double r_min = kDefaultMinRadius,
              double r_max = kDefaultMaxRadius);

struct Bar {
  std::string view_id;
  std::size_t count = 0;

  bool operator==(const Bar&) const = default;
};

// One bar per view of `view_order` that the relationship spans, in that order.
std::vector<Bar> bar_summary(const LayoutItem& item, std::span<const std::string> view_order);

struct LayoutOptions {
  double r_min = kDefaultMinRadius;
  double r_max = kDefaultMaxRadius;
  Execution exec = Execution::parallel;
};

struct LayoutResult {
  std::map<std::string, Point2> coordinates;  // in [-1, 1]
  std::map<std::string, double> radii;
  std::map<std::string, std::vector<Bar>> bar_summaries;
  std::size_t bar_reference_max = 0;  // shared bounding-box height

  bool operator==(const LayoutResult&) const = default;
};

LayoutResult compute_layout(std::span<const LayoutItem> items, std::span<const std::string> view_order,
                            const LayoutOptions& options = {});

}  // namespace xview
