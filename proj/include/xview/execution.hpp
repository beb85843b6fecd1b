#pragma once

namespace xview {

// Selects between the serial reference path of a kernel and its OpenMP path.
// Both paths return identical, canonically ordered results.
enum class Execution { serial, parallel };

}  // namespace xview
