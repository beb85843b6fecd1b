#pragma once

#include <memory>
#include <string>

#include "xview/bundle.hpp"
#include "xview/dataset.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(XVIEW_DATA_DIR) + "/" + name; }

inline xview::DatasetBundle fig2_bundle() { return xview::load_bundle(data_path("fig2.json")); }

inline std::shared_ptr<const xview::Dataset> fig2() {
  return std::make_shared<const xview::Dataset>(xview::Dataset::from_bundle(fig2_bundle()));
}

}  // namespace fixtures
