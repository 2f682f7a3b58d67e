#include "dibr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dibr {

double ShiftConvention::shift_px(double z, double f, double b_ref, double b_tgt) {
    return -f * (b_tgt - b_ref) / z;
}

int ShiftConvention::target_col(int x, double z, double f, double b_ref, double b_tgt) {
    // Round the final landing position, not the shift alone: rounding the
    // shift separately and adding disagrees at half-integers.
    return static_cast<int>(std::lround(x + shift_px(z, f, b_ref, b_tgt)));
}

double disparity(double z, double f, double l) {
    if (!(z > 0.0)) throw std::domain_error("disparity: depth must be positive");
    if (!(f > 0.0)) throw std::invalid_argument("disparity: focal length must be positive");
    return f * l / z;
}

namespace {

void check_prediction_input(const PredictionInput& in, bool need_l_bg) {
    if (need_l_bg && in.l_bg < 1)
        throw std::invalid_argument("prediction input: l_bg must be at least 1");
    if (in.l_fg < 1) throw std::invalid_argument("prediction input: l_fg must be at least 1");
    if (!(in.dd_p > 0.0) || !(in.dd_s > 0.0))
        throw std::invalid_argument("prediction input: disparity differences must be positive");
}

int round_dd(double dd) { return static_cast<int>(std::lround(dd)); }

std::optional<IntInterval> make_interval(int lo, int hi) {
    if (lo > hi) return std::nullopt;
    return IntInterval{lo, hi};
}

}  // namespace

InterpScanline interpolation_boundaries(const PredictionInput& in) {
    check_prediction_input(in, /*need_l_bg=*/true);
    const int ddp = round_dd(in.dd_p);
    const int dds = round_dd(in.dd_s);
    InterpScanline s;
    s.y1 = 0;
    s.y4 = in.l_bg + 1;
    s.y5 = in.l_bg + in.l_fg;
    // Background columns shift relative to the foreground anchor by the
    // disparity difference: toward larger columns for a reference left of
    // the virtual view, toward smaller columns for one on the right.
    const auto per_view = [&](int delta) {
        InterpScanline::PerView v;
        v.y2 = 1 + delta;
        v.y3 = in.l_bg + delta;
        v.y6 = in.l_bg + in.l_fg + 1 + delta;
        return v;
    };
    s.left_primary = per_view(+ddp);
    s.right_primary = per_view(-ddp);
    s.right_comp = per_view(-dds);
    return s;
}

ExtrapScanline extrapolation_boundaries(const PredictionInput& in) {
    check_prediction_input(in, /*need_l_bg=*/false);
    const int ddp = round_dd(in.dd_p);
    const int dds = round_dd(in.dd_s);
    ExtrapScanline s;
    s.y2 = 0;
    s.y3 = in.l_fg - 1;
    // Both references sit right of the virtual camera, so their background
    // shifts right by less than the foreground does; relative to the
    // foreground anchor the background boundaries move left by the
    // disparity difference.
    const auto per_view = [&](int delta) {
        ExtrapScanline::PerView v;
        v.y1 = -1 - delta;
        v.y4 = in.l_fg - delta;
        return v;
    };
    s.primary = per_view(ddp);
    s.comp = per_view(dds);
    return s;
}

HolePrediction predict_interpolation_hole(const PredictionInput& in) {
    const InterpScanline s = interpolation_boundaries(in);
    HolePrediction out;

    // The right primary's shifted gap background covers the merged gap from
    // the left (through its y3), the left primary's covers it from the right
    // (from its y2 on), and background emerging past the second foreground
    // (from y6 on) can cover the tail. What nothing reaches is the hole.
    const int lo = std::max(s.right_primary.y3 + 1, s.y1 + 1);
    const int hi = std::min({s.left_primary.y2 - 1, s.y4 - 1, s.right_primary.y6 - 1});
    out.conventional = make_interval(lo, hi);
    if (out.conventional) {
        // The farther right-hand reference sees more of the background
        // behind the second foreground, moving the y6 limit further left.
        const int comp_hi = std::min(hi, s.right_comp.y6 - 1);
        out.with_complementary = make_interval(lo, comp_hi);
    }
    out.eliminated = !out.with_complementary.has_value();
    return out;
}

HolePrediction predict_extrapolation_hole(const PredictionInput& in) {
    check_prediction_input(in, /*need_l_bg=*/false);
    if (in.dd_s < in.dd_p)
        throw std::domain_error(
            "predict_extrapolation_hole: complementary reference must be at least as far from "
            "the virtual viewpoint as the primary (dd_s >= dd_p)");
    const ExtrapScanline s = extrapolation_boundaries(in);
    HolePrediction out;

    // Uncovered columns sit between the primary's receding background edge
    // (y1) and whichever comes first of its reappearing background (y4) or
    // the foreground itself (y2).
    const int lo = s.primary.y1 + 1;
    const int hi = std::min(s.primary.y4 - 1, s.y2 - 1);
    out.conventional = make_interval(lo, hi);
    if (out.conventional) {
        // The complementary reference's background reappears further left
        // (y4 shrinks with distance), covering the hole from the right.
        const int comp_hi = std::min(hi, s.comp.y4 - 1);
        out.with_complementary = make_interval(lo, comp_hi);
    }
    out.eliminated = !out.with_complementary.has_value();
    return out;
}

}  // namespace dibr
