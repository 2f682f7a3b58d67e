#include "dibr/merger.hpp"

#include <cmath>
#include <stdexcept>

namespace dibr {

double default_depth_blend_threshold(const CameraParams& cam) {
    return 0.02 * (cam.z_far - cam.z_near);
}

WarpedView merge(const WarpedView& left, const WarpedView& right, double w_left,
                 double depth_blend_threshold) {
    if (left.width() != right.width() || left.height() != right.height())
        throw std::invalid_argument("merge: dimension mismatch");
    if (!(w_left >= 0.0 && w_left <= 1.0))
        throw std::invalid_argument("merge: w_left must be in [0,1]");

    const int w = left.width(), h = left.height();
    WarpedView out = WarpedView::create_empty(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const bool hl = left.is_hole(x, y), hr = right.is_hole(x, y);
            if (hl && hr) continue;
            if (hl || hr) {
                const WarpedView& v = hl ? right : left;
                out.set_pixel(x, y, v.texture.at(x, y, 0), v.texture.at(x, y, 1),
                              v.texture.at(x, y, 2), v.z_at(x, y));
                continue;
            }
            const double zl = left.z_at(x, y), zr = right.z_at(x, y);
            if (std::abs(zl - zr) <= depth_blend_threshold) {
                std::uint8_t px[3];
                for (int c = 0; c < 3; ++c) {
                    const double v = w_left * left.texture.at(x, y, c) +
                                     (1.0 - w_left) * right.texture.at(x, y, c);
                    px[c] = static_cast<std::uint8_t>(std::lround(v));
                }
                out.set_pixel(x, y, px[0], px[1], px[2], std::min(zl, zr));
            } else {
                const WarpedView& v = zl < zr ? left : right;
                out.set_pixel(x, y, v.texture.at(x, y, 0), v.texture.at(x, y, 1),
                              v.texture.at(x, y, 2), v.z_at(x, y));
            }
        }
    }
    return out;
}

}  // namespace dibr
