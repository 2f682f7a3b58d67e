#include "dibr/core_types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dibr {

const double kEmptyDepth = std::numeric_limits<double>::infinity();

void validate(const CameraParams& cam) {
    if (!(cam.focal_length_px > 0.0))
        throw std::invalid_argument("camera " + std::to_string(cam.view_id) +
                                    ": focal length must be positive");
    if (!(cam.z_near > 0.0) || !(cam.z_far > cam.z_near))
        throw std::invalid_argument("camera " + std::to_string(cam.view_id) +
                                    ": need 0 < z_near < z_far");
}

TextureImage TextureImage::create(int w, int h) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("texture dimensions must be positive");
    TextureImage img;
    img.width = w;
    img.height = h;
    img.pixels.assign(std::size_t(w) * h * 3, 0);
    return img;
}

DepthMap DepthMap::create(int w, int h) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("depth dimensions must be positive");
    DepthMap d;
    d.width = w;
    d.height = h;
    d.samples.assign(std::size_t(w) * h, 0);
    return d;
}

void validate(const View& v) {
    validate(v.camera);
    if (v.texture.width != v.depth.width || v.texture.height != v.depth.height)
        throw std::invalid_argument("view " + std::to_string(v.camera.view_id) +
                                    ": texture and depth dimensions differ");
    if (v.texture.pixels.size() != std::size_t(v.texture.width) * v.texture.height * 3)
        throw std::invalid_argument("texture buffer size mismatch");
    if (v.depth.samples.size() != std::size_t(v.depth.width) * v.depth.height)
        throw std::invalid_argument("depth buffer size mismatch");
}

WarpedView WarpedView::create_empty(int w, int h) {
    WarpedView out;
    out.texture = TextureImage::create(w, h);
    out.zbuffer.assign(std::size_t(w) * h, kEmptyDepth);
    out.hole_mask.assign(std::size_t(w) * h, 1);
    return out;
}

void WarpedView::set_pixel(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                           double z) {
    texture.at(x, y, 0) = r;
    texture.at(x, y, 1) = g;
    texture.at(x, y, 2) = b;
    const std::size_t i = std::size_t(y) * width() + x;
    zbuffer[i] = z;
    hole_mask[i] = 0;
}

double depth_decode(std::uint8_t v, const CameraParams& cam) {
    const double inv = (v / 255.0) * (1.0 / cam.z_near - 1.0 / cam.z_far) + 1.0 / cam.z_far;
    return 1.0 / inv;
}

std::uint8_t depth_encode(double z, const CameraParams& cam) {
    const double t = (1.0 / z - 1.0 / cam.z_far) / (1.0 / cam.z_near - 1.0 / cam.z_far);
    const long level = std::lround(t * 255.0);
    if (level <= 0) return 0;
    if (level >= 255) return 255;
    return static_cast<std::uint8_t>(level);
}

std::vector<HoleRun> extract_hole_runs(const WarpedView& w, int margin) {
    if (margin < 0) throw std::invalid_argument("margin must be non-negative");
    if (2 * margin >= w.width() || 2 * margin >= w.height())
        throw std::invalid_argument("margin " + std::to_string(margin) +
                                    " leaves no analysis window in a " +
                                    std::to_string(w.width()) + "x" + std::to_string(w.height()) +
                                    " image");
    std::vector<HoleRun> runs;
    const int x0 = margin, x1 = w.width() - 1 - margin;
    const int y0 = margin, y1 = w.height() - 1 - margin;
    for (int y = y0; y <= y1; ++y) {
        int start = -1;
        for (int x = x0; x <= x1; ++x) {
            if (w.is_hole(x, y)) {
                if (start < 0) start = x;
            } else if (start >= 0) {
                runs.push_back({y, start, x - 1});
                start = -1;
            }
        }
        if (start >= 0) runs.push_back({y, start, x1});
    }
    return runs;
}

}  // namespace dibr
