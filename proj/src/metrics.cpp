#include "dibr/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dibr {

long long hole_count(const WarpedView& view, int margin) {
    if (margin < 0) throw std::invalid_argument("hole_count: margin must be non-negative");
    if (2 * margin >= view.width() || 2 * margin >= view.height())
        throw std::invalid_argument("hole_count: margin " + std::to_string(margin) +
                                    " leaves no window in a " + std::to_string(view.width()) +
                                    "x" + std::to_string(view.height()) + " image");
    long long n = 0;
    for (int y = margin; y <= view.height() - 1 - margin; ++y)
        for (int x = margin; x <= view.width() - 1 - margin; ++x)
            if (view.is_hole(x, y)) ++n;
    return n;
}

double reduction_pct(long long before, long long after) {
    if (before < 0 || after < 0)
        throw std::invalid_argument("reduction_pct: counts must be non-negative");
    if (after > before)
        throw std::invalid_argument("reduction_pct: hole count grew (" + std::to_string(before) +
                                    " -> " + std::to_string(after) + ")");
    if (before == 0) return 0.0;
    return 100.0 * static_cast<double>(before - after) / static_cast<double>(before);
}

double psnr_masked(const TextureImage& a, const TextureImage& b,
                   const std::vector<std::uint8_t>& mask, PsnrBasis basis) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("psnr_masked: image dimensions differ");
    if (mask.size() != std::size_t(a.width) * a.height)
        throw std::invalid_argument("psnr_masked: mask size does not match the images");

    double se = 0.0;
    long long samples = 0;
    for (int y = 0; y < a.height; ++y) {
        for (int x = 0; x < a.width; ++x) {
            if (!mask[std::size_t(y) * a.width + x]) continue;
            if (basis == PsnrBasis::rgb) {
                for (int c = 0; c < 3; ++c) {
                    const double d = double(a.at(x, y, c)) - double(b.at(x, y, c));
                    se += d * d;
                }
                samples += 3;
            } else {
                const auto luma = [](const TextureImage& img, int px, int py) {
                    return 0.299 * img.at(px, py, 0) + 0.587 * img.at(px, py, 1) +
                           0.114 * img.at(px, py, 2);
                };
                const double d = luma(a, x, y) - luma(b, x, y);
                se += d * d;
                samples += 1;
            }
        }
    }
    if (samples == 0) throw std::invalid_argument("psnr_masked: empty mask");
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = se / static_cast<double>(samples);
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::string metrics_csv_header() {
    return "config,hole_before,hole_after,reduction_pct,psnr_filled_db,warp_cost_px";
}

std::string to_csv(const MetricsRow& row) {
    std::ostringstream out;
    out << row.config << ',' << row.hole_before << ',' << row.hole_after << ',';
    if (row.reduction)
        out << *row.reduction;
    else
        out << "na";
    out << ',';
    if (row.psnr_filled_db) {
        if (std::isinf(*row.psnr_filled_db))
            out << "inf";
        else
            out << *row.psnr_filled_db;
    } else {
        out << "na";
    }
    out << ',';
    if (row.warp_cost_px)
        out << *row.warp_cost_px;
    else
        out << "na";
    return out.str();
}

}  // namespace dibr
