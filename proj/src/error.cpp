#include "xview/error.hpp"

namespace xview {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "ParseError";
    case Errc::dangling_reference: return "DanglingReference";
    case Errc::span_out_of_bounds: return "SpanOutOfBounds";
    case Errc::duplicate_view_id: return "DuplicateViewId";
    case Errc::duplicate_element_id: return "DuplicateElementId";
    case Errc::duplicate_relation: return "DuplicateRelation";
    case Errc::missing_required_attr: return "MissingRequiredAttr";
    case Errc::unknown_view: return "UnknownView";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::same_view_pair: return "SameViewPair";
    case Errc::too_few_views: return "TooFewViews";
    case Errc::no_shared_view: return "NoSharedView";
    case Errc::path_limit_exceeded: return "PathLimitExceeded";
    case Errc::empty_input: return "EmptyInput";
    case Errc::non_finite_distance: return "NonFiniteDistance";
    case Errc::out_of_range_count: return "OutOfRangeCount";
    case Errc::invalid_threshold: return "InvalidThreshold";
    case Errc::not_a_chain_view: return "NotAChainView";
    case Errc::unknown_origin: return "UnknownOrigin";
    case Errc::unknown_relationship: return "UnknownRelationship";
    case Errc::unknown_panel: return "UnknownPanel";
    case Errc::unknown_dataset: return "UnknownDataset";
    case Errc::panel_pinned: return "PanelPinned";
    case Errc::panel_not_pinned: return "PanelNotPinned";
    case Errc::panel_not_closable: return "PanelNotClosable";
    case Errc::below_minimum_size: return "BelowMinimumSize";
    case Errc::self_link: return "SelfLink";
    case Errc::no_documents: return "NoDocuments";
    case Errc::unknown_command: return "UnknownCommand";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::dataset_not_active: return "DatasetNotActive";
    case Errc::unknown_route: return "UnknownRoute";
    case Errc::internal: return "Internal";
  }
  return "Internal";
}

ErrorKind errc_kind(Errc code) {
  switch (code) {
    case Errc::parse_error:
      return ErrorKind::parse;
    case Errc::unknown_view:
    case Errc::unknown_element:
    case Errc::unknown_origin:
    case Errc::unknown_relationship:
    case Errc::unknown_panel:
    case Errc::unknown_dataset:
    case Errc::unknown_route:
      return ErrorKind::not_found;
    case Errc::path_limit_exceeded:
    case Errc::internal:
      return ErrorKind::internal;
    default:
      return ErrorKind::precondition;
  }
}

}  // namespace xview
