#pragma once

#include <array>
#include <string>
#include <vector>

#include "dibr/core_types.hpp"

namespace dibr {

// One constant-depth slab: world interval [x0, x1) on rows
// [row_first, row_last], drawn with a procedural pattern.
struct SceneSegment {
    int row_first = 0;
    int row_last = 0;
    double x0 = 0.0;
    double x1 = 0.0;
    double z = 0.0;
    int pattern = 0;
};

// Layered scanline scene. Pixels no segment covers fall through to an
// implicit full-width plane at the rendering camera's z_far, so every ray
// hits something and ground truth never has holes.
struct ScanlineScene {
    int width = 0;
    int height = 0;
    int background_pattern = 0;
    std::vector<SceneSegment> segments;
};

// Deterministic high-contrast color for a world position: a per-pattern base
// hue modulated by coarse blocks (strong) and fine stripes (subtle), so a
// fill from the wrong world position is visible at both scales.
std::array<std::uint8_t, 3> pattern_color(int pattern, double world_x);

// Point-samples one pixel row per scanline through the pinhole model:
// pixel u of a camera at baseline b sees world position u*z/f + b on the
// nearest covering segment (first in the list on exact depth ties). Depth is
// quantized with the core convention. Deterministic.
View render_view(const ScanlineScene& scene, const CameraParams& cam);

// Same renderer, used at the virtual viewpoint as the reference image for
// masked PSNR and as the hole oracle.
View render_ground_truth(const ScanlineScene& scene, const CameraParams& cam);

// Parameters for the canonical two-foreground layout: a left foreground
// segment ending at anchor_col, a background gap of l_bg pixels, and a
// second foreground of l_fg pixels, over a full-width background slab.
// Pixel lengths are as seen from the virtual (baseline 0) camera.
struct FbfbParams {
    int l_bg = 0;
    int l_fg = 0;
    double z_fg = 0.0;
    double z_bg = 0.0;
    int width = 256;
    int height = 144;
    int anchor_col = 120;
    int left_fg_len = 40;
};

// Builds the two-foreground scene and verifies that every foreground segment
// stays inside the image in every rig camera (throws std::invalid_argument
// otherwise).
ScanlineScene make_fbfb(const FbfbParams& p, const std::vector<CameraParams>& rig);

// Single-foreground variant for extrapolation testbeds: foreground of l_fg
// pixels starting at anchor_col on the background slab.
ScanlineScene make_bfb(const FbfbParams& p, const std::vector<CameraParams>& rig);

// Mirrors a scene about the vertical axis through the image center, given
// the rig focal length. Rendering the mirror from a camera at -b reproduces
// the original camera-b render column-flipped (pattern content aside).
ScanlineScene mirror_scene(const ScanlineScene& scene, double focal_length_px);

// Plain-text round trip for scene descriptions.
void save_scene(const ScanlineScene& scene, const std::string& path);
ScanlineScene load_scene(const std::string& path);

// A ready-to-render synthetic dataset: scene, reference rig, and the virtual
// camera the references get warped to.
struct ScenePreset {
    ScanlineScene scene;
    std::vector<CameraParams> rig;
    CameraParams virtual_cam;
};

// Built-in presets: "fbfb", "bfbf" (its mirror), "bfb" (extrapolation), and
// "multi" (wide scene with several foreground objects). Interpolation rigs
// use view ids 1/2 for the flanking primaries, 3/4 for the first
// complementary pair, 5/6 for the farther pair; the extrapolation rig uses
// 1 for the primary and 2/3 for increasingly distant complementaries.
ScenePreset make_preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace dibr
