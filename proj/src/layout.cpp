#include "xview/layout.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "xview/error.hpp"

namespace xview {

std::vector<ElementRef> LayoutItem::members() const {
  std::vector<ElementRef> out;
  for (const auto& [view, ids] : entity_sets) {
    for (const auto& id : ids) out.push_back({view, id});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t LayoutItem::count() const {
  std::size_t n = 0;
  for (const auto& [_, ids] : entity_sets) n += ids.size();
  return n;
}

RelationshipVectors vectorize(std::span<const LayoutItem> items) {
  if (items.empty()) throw Error(Errc::empty_input, "no relationships to vectorize");
  RelationshipVectors out;
  for (const auto& item : items) {
    auto m = item.members();
    out.universe.insert(out.universe.end(), m.begin(), m.end());
  }
  std::sort(out.universe.begin(), out.universe.end());
  out.universe.erase(std::unique(out.universe.begin(), out.universe.end()), out.universe.end());

  for (const auto& item : items) {
    std::vector<std::uint8_t> row(out.universe.size(), 0);
    for (const auto& ref : item.members()) {
      auto it = std::lower_bound(out.universe.begin(), out.universe.end(), ref);
      row[static_cast<std::size_t>(it - out.universe.begin())] = 1;
    }
    out.ids.push_back(item.id);
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

double jaccard_distance(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    inter += static_cast<std::size_t>(x[k] & y[k]);
    uni += static_cast<std::size_t>(x[k] | y[k]);
  }
  if (uni == 0) return 0.0;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

DistanceMatrix pairwise_distances(const RelationshipVectors& vectors, Execution exec) {
  const std::size_t n = vectors.rows.size();
  DistanceMatrix d(n);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, jaccard_distance(vectors.rows[i], vectors.rows[j]));
    }
    return d;
  }
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t si = 0; si < count; ++si) {
    auto i = static_cast<std::size_t>(si);
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, jaccard_distance(vectors.rows[i], vectors.rows[j]));
  }
  return d;
}

std::vector<Point2> mds_2d(const DistanceMatrix& distances) {
  const std::size_t n = distances.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(distances.at(i, j))) {
        throw Error(Errc::non_finite_distance,
                    "distance (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
      }
    }
  }
  if (n == 0) return {};
  if (n == 1) return {Point2{}};
  if (n == 2) {
    const double half = distances.at(0, 1) / 2.0;
    return {Point2{half, 0.0}, Point2{-half, 0.0}};
  }

  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd sq(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = distances.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      sq(i, j) = d * d;
    }
  }
  // Double centering: B = -1/2 J D^2 J.
  const Eigen::VectorXd row_mean = sq.rowwise().mean();
  const Eigen::RowVectorXd col_mean = sq.colwise().mean();
  const double grand = sq.mean();
  Eigen::MatrixXd b(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - col_mean(j) + grand);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  std::vector<Point2> out(n);
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::Index k = m - 1 - axis;
    const double scale = std::sqrt(std::max(values(k), 0.0));
    Eigen::VectorXd coord = vectors.col(k) * scale;
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < m; ++i) {
      if (std::abs(coord(i)) > std::abs(coord(pivot))) pivot = i;
    }
    if (coord(pivot) < 0) coord = -coord;
    for (Eigen::Index i = 0; i < m; ++i) {
      auto& p = out[static_cast<std::size_t>(i)];
      (axis == 0 ? p.x : p.y) = coord(i);
    }
  }
  return out;
}

double radius(std::size_t count, std::size_t count_min, std::size_t count_max, double r_min, double r_max) {
  if (count_min > count_max || count < count_min || count > count_max || r_min > r_max) {
    throw Error(Errc::out_of_range_count, "count " + std::to_string(count) + " outside [" + std::to_string(count_min) +
                                              ", " + std::to_string(count_max) + "]");
  }
  if (count_min == count_max) return (r_min + r_max) / 2.0;
  return r_min + (r_max - r_min) * static_cast<double>(count - count_min) / static_cast<double>(count_max - count_min);
}

std::vector<Bar> bar_summary(const LayoutItem& item, std::span<const std::string> view_order) {
  std::vector<Bar> bars;
  for (const auto& view : view_order) {
    auto it = item.entity_sets.find(view);
    if (it != item.entity_sets.end()) bars.push_back({view, it->second.size()});
  }
  return bars;
}

LayoutResult compute_layout(std::span<const LayoutItem> items, std::span<const std::string> view_order,
                            const LayoutOptions& options) {
  LayoutResult out;
  if (items.empty()) return out;

  auto points = mds_2d(pairwise_distances(vectorize(items), options.exec));
  double extent = 0.0;
  for (const auto& p : points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});

  std::size_t cmin = items.front().count();
  std::size_t cmax = cmin;
  for (const auto& item : items) {
    cmin = std::min(cmin, item.count());
    cmax = std::max(cmax, item.count());
  }

  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    Point2 p = points[i];
    if (extent > 0.0) p = {p.x / extent, p.y / extent};
    out.coordinates[item.id] = p;
    out.radii[item.id] = radius(item.count(), cmin, cmax, options.r_min, options.r_max);
    auto bars = bar_summary(item, view_order);
    for (const auto& bar : bars) out.bar_reference_max = std::max(out.bar_reference_max, bar.count);
    out.bar_summaries[item.id] = std::move(bars);
  }
  return out;
}

}  // namespace xview
