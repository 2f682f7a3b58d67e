#pragma once

#include "dibr/core_types.hpp"

namespace dibr {

// Depth gap below which two warped candidates are treated as the same
// surface and blended: 2% of the camera's metric depth range.
double default_depth_blend_threshold(const CameraParams& cam);

// Blends two views warped to the same viewpoint. Per pixel: both holes stay
// a hole; a single candidate is copied; two candidates within
// depth_blend_threshold of each other blend as
// w_left*left + (1-w_left)*right (rounded) with the nearer depth, otherwise
// the nearer candidate wins outright.
// Throws std::invalid_argument on dimension mismatch or w_left outside [0,1].
WarpedView merge(const WarpedView& left, const WarpedView& right, double w_left,
                 double depth_blend_threshold);

}  // namespace dibr
