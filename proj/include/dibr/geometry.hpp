#pragma once

#include <optional>
#include <variant>

namespace dibr {

// Closed interval of pixel columns.
struct IntInterval {
    int lo = 0;
    int hi = 0;

    int length() const { return hi - lo + 1; }
    bool contains(int c) const { return lo <= c && c <= hi; }
    bool operator==(const IntInterval&) const = default;
};

// The one warping rule every component shares: a pixel at column x, seen at
// metric depth z from a camera at b_ref, lands at
//     round(x - f * (b_tgt - b_ref) / z)
// in the camera at b_tgt. Rounding is to nearest with halves away from zero,
// which keeps left and right warps symmetric. A zero baseline difference is
// the identity for every depth, and nearer pixels shift strictly more.
struct ShiftConvention {
    static double shift_px(double z, double f, double b_ref, double b_tgt);
    static int target_col(int x, double z, double f, double b_ref, double b_tgt);
};

// Horizontal displacement of a point at depth z between two parallel cameras
// a baseline l apart: f * l / z (pixels, signed like l).
// Throws std::domain_error for z <= 0.
double disparity(double z, double f, double l);

// Scanline geometry driving the hole predictors. All lengths are pixels in
// the virtual view; the disparity differences are foreground shift minus
// background shift, already rounded to whole columns.
//   l_bg  - background gap between the two foreground segments
//   l_fg  - right foreground segment length
//   dd_p  - disparity difference of a primary reference vs. the virtual view
//   dd_s  - same for the complementary reference (farther, so dd_s >= dd_p)
struct PredictionInput {
    int l_bg = 0;
    int l_fg = 0;
    double dd_p = 0.0;
    double dd_s = 0.0;
};

// Warped boundary columns around one foreground-background-foreground-
// background transition, anchored so the right edge of the left foreground
// segment lands at column 0 in the virtual view. Foreground boundary points
// sit at the same depth in every reference, so their warped positions y1, y4,
// y5 coincide across views; the background boundaries y2, y3, y6 shift by
// each reference's disparity difference.
struct InterpScanline {
    struct PerView {
        int y2 = 0;  // first background column right of the anchor
        int y3 = 0;  // last background column of the gap
        int y6 = 0;  // first background column right of the second foreground
    };
    int y1 = 0;  // anchor: right edge of the left foreground segment
    int y4 = 0;  // left edge of the right foreground segment
    int y5 = 0;  // right edge of the right foreground segment
    PerView left_primary;   // reference left of the virtual view
    PerView right_primary;  // reference right of the virtual view
    PerView right_comp;     // farther complementary reference on the right
};

// Same idea for extrapolation from references that all sit on one side of
// the virtual viewpoint (virtual camera left of the primary, primary left of
// the complementary). Anchored at the warped left edge of the foreground.
struct ExtrapScanline {
    struct PerView {
        int y1 = 0;  // last background column left of the foreground
        int y4 = 0;  // first background column right of the foreground
    };
    int y2 = 0;  // anchor: warped left edge of the foreground segment
    int y3 = 0;  // warped right edge of the foreground segment
    PerView primary;
    PerView comp;
};

using AnalyticScanline = std::variant<InterpScanline, ExtrapScanline>;

InterpScanline interpolation_boundaries(const PredictionInput& in);
ExtrapScanline extrapolation_boundaries(const PredictionInput& in);

// Hole interval before and after assistance from the complementary
// reference, in anchor-relative columns. `with_complementary` is always
// contained in `conventional`; `eliminated` is true exactly when no hole
// remains once the complementary reference has been used.
struct HolePrediction {
    std::optional<IntInterval> conventional;
    std::optional<IntInterval> with_complementary;
    bool eliminated = false;
};

// Merged-view hole between two primary references flanking the virtual
// viewpoint, and its reduction by a farther complementary reference on the
// right. Anchor: y1 = 0 (right edge of the left foreground segment).
HolePrediction predict_interpolation_hole(const PredictionInput& in);

// Hole left of the foreground when extrapolating from references right of
// the virtual viewpoint (l_bg is ignored; the background is unbounded on
// both sides of the single foreground segment). Anchor: y2 = 0.
// Throws std::domain_error when dd_s < dd_p; dd_s == dd_p is allowed and
// yields no reduction.
HolePrediction predict_extrapolation_hole(const PredictionInput& in);

}  // namespace dibr
