#pragma once

#include <cstdint>
#include <vector>

namespace dibr {

// One camera on a rectified parallel rig. All cameras of a rig share the
// focal length; they differ only in their horizontal position on the rig
// axis (baseline_pos, scene length units).
struct CameraParams {
    int view_id = 0;
    double focal_length_px = 0.0;
    double baseline_pos = 0.0;
    double z_near = 0.0;
    double z_far = 0.0;
};

// Throws std::invalid_argument when focal length or the depth range is bad.
void validate(const CameraParams& cam);

// Interleaved 8-bit RGB, row-major.
struct TextureImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    static TextureImage create(int w, int h);

    std::uint8_t& at(int x, int y, int c) { return pixels[(std::size_t(y) * width + x) * 3 + c]; }
    std::uint8_t at(int x, int y, int c) const { return pixels[(std::size_t(y) * width + x) * 3 + c]; }
};

// 8-bit quantized inverse depth; larger sample = nearer. Metric depth is
// recovered with depth_decode against the owning camera's z range.
struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    static DepthMap create(int w, int h);

    std::uint8_t& at(int x, int y) { return samples[std::size_t(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return samples[std::size_t(y) * width + x]; }
};

struct View {
    TextureImage texture;
    DepthMap depth;
    CameraParams camera;
};

// Throws std::invalid_argument when texture and depth dimensions disagree or
// the camera is invalid.
void validate(const View& v);

// Marks z-buffer entries that no source pixel reached. The hole mask is the
// authoritative hole indicator; the sentinel merely keeps "z < zbuffer[i]"
// well-defined everywhere. Infinity guarantees any real depth wins the test.
extern const double kEmptyDepth;

// A view already projected to the target viewpoint: texture plus the metric
// depth that won the z-test at each pixel, plus an explicit hole mask.
// Invariant: hole_mask[i] != 0  <=>  zbuffer[i] == kEmptyDepth.
struct WarpedView {
    TextureImage texture;
    std::vector<double> zbuffer;
    std::vector<std::uint8_t> hole_mask;

    static WarpedView create_empty(int w, int h);

    int width() const { return texture.width; }
    int height() const { return texture.height; }

    bool is_hole(int x, int y) const { return hole_mask[std::size_t(y) * width() + x] != 0; }
    double z_at(int x, int y) const { return zbuffer[std::size_t(y) * width() + x]; }

    void set_pixel(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b, double z);
};

// Maximal horizontal stretch of contiguous hole pixels on one row, within
// the analysis window it was extracted from (inclusive columns).
struct HoleRun {
    int row = 0;
    int start_col = 0;
    int end_col = 0;

    int length() const { return end_col - start_col + 1; }
    bool operator==(const HoleRun&) const = default;
};

// Quantized sample -> metric depth. Inverse-depth convention:
//   1/z = (v/255) * (1/z_near - 1/z_far) + 1/z_far
// so v=255 maps to z_near and v=0 to z_far, strictly decreasing in v.
double depth_decode(std::uint8_t v, const CameraParams& cam);

// Metric depth -> nearest quantized sample (clamped). Rounds to the nearest
// 8-bit level, so depth_encode(depth_decode(v)) == v for every v.
std::uint8_t depth_encode(double z, const CameraParams& cam);

// All maximal hole runs inside the window that leaves `margin` pixels off
// every image border; runs are clipped to the window and sorted by
// (row, start_col). Throws std::invalid_argument when the margin leaves no
// window.
std::vector<HoleRun> extract_hole_runs(const WarpedView& w, int margin);

}  // namespace dibr
