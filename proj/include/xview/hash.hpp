#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace xview {

// 64-bit FNV-1a, stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes);

// "<prefix>-<16 hex digits>" content identifier.
std::string content_id(std::string_view prefix, std::string_view canonical_text);

}  // namespace xview
