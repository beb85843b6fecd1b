#pragma once

// Canonical JSON forms shared by the CLI, the HTTP API and the workspace
// persistence file. Objects serialize with sorted keys, so dumps of equal
// values are byte-identical.

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "xview/chains.hpp"
#include "xview/dataset.hpp"
#include "xview/layout.hpp"
#include "xview/miner.hpp"

namespace xview {

nlohmann::json to_json(const ElementRef& ref);
ElementRef element_ref_from_json(const nlohmann::json& j);  // throws InvalidArgument

nlohmann::json to_json(const Bicluster& b);
nlohmann::json to_json(const BiclusterChain& c);
nlohmann::json to_json(const LayoutResult& layout);
nlohmann::json to_json(const TabulatedView& view);

nlohmann::json biclusters_json(std::span<const Bicluster> biclusters);
nlohmann::json chains_json(std::span<const BiclusterChain> chains);

// Compact dump with sorted keys.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace xview
