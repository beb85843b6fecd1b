#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xview {

// Every engine failure carries one of these codes. The string form is the
// stable identifier exposed by the CLI and the HTTP API.
enum class Errc {
  parse_error,
  dangling_reference,
  span_out_of_bounds,
  duplicate_view_id,
  duplicate_element_id,
  duplicate_relation,
  missing_required_attr,
  unknown_view,
  unknown_element,
  same_view_pair,
  too_few_views,
  no_shared_view,
  path_limit_exceeded,
  empty_input,
  non_finite_distance,
  out_of_range_count,
  invalid_threshold,
  not_a_chain_view,
  unknown_origin,
  unknown_relationship,
  unknown_panel,
  unknown_dataset,
  panel_pinned,
  panel_not_pinned,
  panel_not_closable,
  below_minimum_size,
  self_link,
  no_documents,
  unknown_command,
  invalid_argument,
  dataset_not_active,
  unknown_route,
  internal,
};

enum class ErrorKind { precondition, not_found, parse, internal };

std::string_view errc_name(Errc code);
ErrorKind errc_kind(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::map<std::string, std::string> detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const { return errc_name(code_); }
  ErrorKind kind() const { return errc_kind(code_); }
  const std::map<std::string, std::string>& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::map<std::string, std::string> detail_;
};

}  // namespace xview
