#pragma once

#include <optional>
#include <vector>

#include "dibr/core_types.hpp"
#include "dibr/geometry.hpp"

namespace dibr {

enum class Side { left, right };

struct BackgroundEstimate {
    double z = 0.0;
    Side side = Side::left;
};

struct FillOptions {
    // Extra source columns appended beyond the mapped run, absorbing small
    // shift differences from depth variation inside the run.
    int extra_pixels = 2;
    // Metric depth gap that separates two surfaces; below it the flanking
    // pixels count as one (foreground) surface and the background is looked
    // up in the fallback window instead.
    double discontinuity_threshold = 0.0;
    // Fallback search reach, columns to each side of the run.
    int fallback_window = 32;
};

// discontinuity_threshold defaults to 10% of the camera's metric depth range.
FillOptions default_fill_options(const CameraParams& cam);

// Warp plan for one hole run against one complementary view: where the
// background around the run sits in that view. source_cols is empty when the
// mapped interval falls entirely outside the view.
struct SelectivePlan {
    HoleRun run;
    double z_bg = 0.0;
    Side background_side = Side::left;
    int source_view_id = 0;
    std::optional<IntInterval> source_cols;
};

struct FillReport {
    std::vector<std::uint8_t> filled_mask;  // 1 where a hole pixel got a value
    std::vector<std::pair<HoleRun, int>> run_fill_counts;
    long long filled_total = 0;
    long long warp_cost_px = 0;  // source pixels forward-warped
};

struct FillResult {
    WarpedView view;
    FillReport report;
};

// Decides which side of a hole run is background: the flanking non-hole
// neighbor with the (strictly) larger metric depth. Runs touching an image
// edge use the only existing neighbor. When the two neighbors lie within
// discontinuity_threshold of each other, both belong to the occluding
// surface, and the estimate falls back to the farthest non-hole pixel within
// fallback_window columns of the run (nearest such pixel on ties, left
// first). Throws std::invalid_argument when no neighbor exists at all.
BackgroundEstimate estimate_background_depth(const WarpedView& view, const HoleRun& run,
                                             const FillOptions& opt);

// Backward-maps each run into the complementary view at the estimated
// background depth (a uniform column shift, so mapping one edge pixel places
// the whole run) and claims the mapped run plus extra_pixels further columns
// on the background side, clipped to the image. The claim covers exactly the
// source columns whose background content lands on the run, with the margin
// absorbing content that shifted slightly within the disoccluded region.
std::vector<SelectivePlan> plan_selective(const WarpedView& view,
                                          const std::vector<HoleRun>& runs, const View& comp,
                                          double target_baseline_pos, const FillOptions& opt);

// Warps every complementary view in full and writes warped pixels into hole
// pixels of base only; the nearest candidate wins per pixel, earlier views
// win exact-depth ties. Non-hole pixels of base are never touched.
FillResult fill_full(const WarpedView& base, const std::vector<View>& comps,
                     double target_baseline_pos);

// Same contract as fill_full, but each complementary view is only warped
// inside the planned source intervals for the current hole runs, at true
// per-pixel depths. Cost is the number of planned source pixels.
FillResult fill_selective(const WarpedView& base, const std::vector<View>& comps,
                          double target_baseline_pos, const FillOptions& opt);
FillResult fill_selective(const WarpedView& base, const std::vector<View>& comps,
                          double target_baseline_pos);

// Comparison baseline that uses no complementary view: every hole run is
// painted with its background-side flanking pixel (texture and depth).
// Runs with no flanking pixel at all are left as holes.
WarpedView inpaint_baseline(const WarpedView& base, const FillOptions& opt);

}  // namespace dibr
