#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dibr/core_types.hpp"

namespace dibr {

// Hole pixels strictly inside the window that leaves `margin` pixels off all
// four borders. Throws std::invalid_argument when the margin consumes the
// image.
long long hole_count(const WarpedView& view, int margin = 60);

// 100 * (before - after) / before, with 0% for before == 0.
// Throws std::invalid_argument when after > before.
double reduction_pct(long long before, long long after);

enum class PsnrBasis { rgb, luma };

// Peak-255 PSNR over the masked pixels only; MSE averages the three channels
// (PsnrBasis::rgb) or is taken on BT.601 full-range luma (PsnrBasis::luma).
// Identical masked content returns +infinity. Throws std::invalid_argument
// on dimension mismatch or an empty mask.
double psnr_masked(const TextureImage& a, const TextureImage& b,
                   const std::vector<std::uint8_t>& mask, PsnrBasis basis = PsnrBasis::rgb);

// One line of the machine-readable report. Missing values serialize as "na",
// infinite PSNR as "inf".
struct MetricsRow {
    std::string config;
    long long hole_before = 0;
    long long hole_after = 0;
    std::optional<double> reduction;
    std::optional<double> psnr_filled_db;
    std::optional<long long> warp_cost_px;
};

std::string metrics_csv_header();
std::string to_csv(const MetricsRow& row);

}  // namespace dibr
