#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "xview/bundle.hpp"
#include "xview/execution.hpp"

namespace xview {

// Edge (a, b) iff at least one document holds an occurrence of a (view_a)
// and one of b (view_b). Result is oriented (view_a, view_b), sorted and
// unique regardless of document order or schedule.
std::vector<Edge> derive_cooccurrence(std::span<const Document> documents, std::string_view view_a,
                                      std::string_view view_b, Execution exec = Execution::parallel);

}  // namespace xview
