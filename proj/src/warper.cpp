#include "dibr/warper.hpp"

#include <algorithm>
#include <stdexcept>

namespace dibr {

namespace {

void check_filter(const ColumnFilter& filter, int width, int height) {
    if (static_cast<int>(filter.size()) != height)
        throw std::invalid_argument("column filter must have one entry per row");
    for (const auto& row : filter)
        for (const IntInterval& iv : row)
            if (iv.lo > iv.hi || iv.lo < 0 || iv.hi >= width)
                throw std::invalid_argument("column filter interval out of image bounds");
}

}  // namespace

WarpedView forward_warp(const WarpRequest& req) {
    const View& src = req.source;
    validate(src);
    const int w = src.texture.width;
    const int h = src.texture.height;
    if (req.column_filter) check_filter(*req.column_filter, w, h);

    WarpedView out = WarpedView::create_empty(w, h);
    const double f = src.camera.focal_length_px;
    const double b_src = src.camera.baseline_pos;
    const double b_tgt = req.target_baseline_pos;

    auto warp_span = [&](int y, int x_first, int x_last) {
        for (int x = x_first; x <= x_last; ++x) {
            const double z = depth_decode(src.depth.at(x, y), src.camera);
            const int t = ShiftConvention::target_col(x, z, f, b_src, b_tgt);
            if (t < 0 || t >= w) continue;
            // Strict test + ascending x means the lowest source column wins
            // depth ties, deterministically.
            if (z < out.z_at(t, y))
                out.set_pixel(t, y, src.texture.at(x, y, 0), src.texture.at(x, y, 1),
                              src.texture.at(x, y, 2), z);
        }
    };

    for (int y = 0; y < h; ++y) {
        if (req.column_filter) {
            // Process intervals left to right so the lowest-column tie rule
            // holds regardless of the order the caller listed them in.
            std::vector<IntInterval> spans = (*req.column_filter)[y];
            std::sort(spans.begin(), spans.end(),
                      [](const IntInterval& a, const IntInterval& b) { return a.lo < b.lo; });
            for (const IntInterval& iv : spans) warp_span(y, iv.lo, iv.hi);
        } else {
            warp_span(y, 0, w - 1);
        }
    }
    return out;
}

int backward_map(int col, double z, double from_baseline, double to_baseline, double f) {
    if (!(z > 0.0)) throw std::domain_error("backward_map: depth must be positive");
    return ShiftConvention::target_col(col, z, f, from_baseline, to_baseline);
}

}  // namespace dibr
