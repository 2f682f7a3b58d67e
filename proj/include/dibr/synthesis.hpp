#pragma once

#include <optional>
#include <vector>

#include "dibr/core_types.hpp"
#include "dibr/holefill.hpp"

namespace dibr {

enum class SynthesisMode { interpolation, extrapolation };
enum class FillMode { none, full, selective, inpaint };

struct SynthesisConfig {
    SynthesisMode mode = SynthesisMode::interpolation;
    FillMode fill = FillMode::none;
    std::vector<int> primary_ids;  // two flanking views, or one for extrapolation
    std::vector<int> comp_ids;     // complementary views, nearest first
    double target_baseline_pos = 0.0;
    int margin = 60;
    // Left primary's blend weight; derived from the baseline distances when
    // unset (the farther primary gets the smaller weight).
    std::optional<double> w_left;
    std::optional<FillOptions> fill_options;  // defaults from the rig when unset
};

struct SynthesisOutput {
    WarpedView pre_fill;  // after warping (and merging), before any fill
    WarpedView result;
    FillReport fill_report;  // zero cost for none/inpaint; mask always valid
    long long hole_before = 0;
    long long hole_after = 0;
};

// Full pipeline: warp the primaries to the target, merge them (interpolation
// mode), then apply the configured fill. Hole counts use cfg.margin.
// Throws std::invalid_argument for unknown ids, a primary count not matching
// the mode, complementary-fill modes without complementary ids, or inpaint
// with complementary ids.
SynthesisOutput synthesize(const std::vector<View>& views, const SynthesisConfig& cfg);

}  // namespace dibr
