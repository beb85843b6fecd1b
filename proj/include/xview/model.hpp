#pragma once

// Relational data model: one element table per view, one joint table per
// view pair and the binary relation matrices the miner runs on.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace xview {

enum class ViewType { graph, map, list, document, other };

std::string_view to_string(ViewType type);
std::optional<ViewType> parse_view_type(std::string_view text);

using AttrValue = std::variant<std::string, std::int64_t, double>;
using Attrs = std::map<std::string, AttrValue>;

struct ViewDescriptor {
  std::string view_id;
  ViewType view_type = ViewType::other;
  std::string label;
  std::size_t insertion_index = 0;

  bool operator==(const ViewDescriptor&) const = default;
};

struct VisualElement {
  std::string element_id;
  std::string view_id;
  std::string label;
  Attrs attrs;

  bool operator==(const VisualElement&) const = default;
};

// Globally unique handle of one visual element.
struct ElementRef {
  std::string view_id;
  std::string element_id;

  auto operator<=>(const ElementRef&) const = default;
  bool operator==(const ElementRef&) const = default;
};

std::string to_string(const ElementRef& ref);

// A view as it arrives from a bundle, before validation.
struct RawView {
  std::string view_id;
  ViewType view_type = ViewType::other;
  std::string label;
  std::vector<VisualElement> elements;

  bool operator==(const RawView&) const = default;
};

struct TabulatedView {
  ViewDescriptor descriptor;
  std::vector<VisualElement> elements;  // bundle order

  const std::string& id() const { return descriptor.view_id; }
  const VisualElement* find(std::string_view element_id) const;
};

// Validates a raw view and assigns it its insertion slot. Throws
// DuplicateElementId or MissingRequiredAttr.
TabulatedView tabulate_view(const RawView& raw, std::size_t insertion_index);

using Edge = std::pair<std::string, std::string>;

// Unordered view pair stored with the lower insertion index first.
using ViewPair = std::pair<std::string, std::string>;

struct JointTable {
  std::string view_a;
  std::string view_b;
  std::vector<Edge> pairs;  // sorted, unique; first member belongs to view_a

  bool operator==(const JointTable&) const = default;
};

// `edges` are oriented (element of a, element of b). The result is stored in
// canonical view order with the edges flipped when needed.
JointTable build_joint_table(const TabulatedView& a, const TabulatedView& b, std::span<const Edge> edges);

class RelationMatrix {
 public:
  RelationMatrix() = default;
  RelationMatrix(std::string view_a, std::string view_b, std::vector<std::string> row_ids,
                 std::vector<std::string> col_ids);

  const std::string& view_a() const { return view_a_; }
  const std::string& view_b() const { return view_b_; }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& col_ids() const { return col_ids_; }
  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return col_ids_.size(); }

  bool at(std::size_t r, std::size_t c) const { return cells_[r * col_ids_.size() + c] != 0; }
  void set(std::size_t r, std::size_t c, bool value) { cells_[r * col_ids_.size() + c] = value ? 1 : 0; }
  std::size_t count_ones() const;

  std::optional<std::size_t> row_index(std::string_view id) const;
  std::optional<std::size_t> col_index(std::string_view id) const;

  RelationMatrix transposed() const;

  bool operator==(const RelationMatrix&) const = default;

 private:
  std::string view_a_;
  std::string view_b_;
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_ids_;
  std::vector<std::uint8_t> cells_;
};

// Full element sets of both views become rows and columns, sorted by
// element id; unrelated elements stay as all-zero rows/columns.
RelationMatrix to_relation_matrix(const JointTable& joint, const TabulatedView& a, const TabulatedView& b);

}  // namespace xview
