#pragma once

#include <vector>

#include "dibr/core_types.hpp"
#include "dibr/geometry.hpp"

namespace dibr {

// Per-row list of inclusive source column intervals. Row r of the filter
// names the only source columns of row r that get warped; rows without
// intervals contribute nothing.
using ColumnFilter = std::vector<std::vector<IntInterval>>;

struct WarpRequest {
    const View& source;
    double target_baseline_pos = 0.0;
    // Optional restriction to a subset of source columns (selective fills).
    // When set, must have one entry per row and stay within image bounds.
    const ColumnFilter* column_filter = nullptr;
};

// Projects every (possibly filtered) source pixel to the target viewpoint
// at its decoded metric depth. Collisions keep the nearest pixel; equal
// depths keep the lower source column. Target pixels nothing lands on stay
// holes; landings outside the image are dropped. Rows are independent.
WarpedView forward_warp(const WarpRequest& req);

// The source column (in the camera at to_baseline) that forward-warps onto
// `col` (in the camera at from_baseline) at depth z. Because the shift only
// changes sign, this is the same convention run in the opposite direction;
// a forward warp of the result lands within one column of `col`.
// Throws std::domain_error for z <= 0.
int backward_map(int col, double z, double from_baseline, double to_baseline, double f);

}  // namespace dibr
