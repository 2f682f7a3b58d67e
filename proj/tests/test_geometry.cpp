#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <utility>
#include <vector>

#include "dibr/geometry.hpp"

using namespace dibr;

namespace {

// Brute-force scanline painter, independent of the analytic predictor. Each
// reference is described by where its content sits relative to the virtual
// layout: a layer with offset `off` occupies source column x when the virtual
// layout has it at x - off, and warping sends source column x back to x - off.
// Foreground is at depth 1, background at depth 2, and the background extends
// forever on both sides of the listed foreground intervals.
struct RefOffsets {
    int fg_off = 0;
    int bg_off = 0;
};

using Runs = std::vector<std::pair<int, int>>;

Runs painted_holes(const std::vector<std::pair<int, int>>& fg_cols,
                   const std::vector<RefOffsets>& refs, int scan_lo, int scan_hi) {
    const auto in_fg = [&](int virtual_col) {
        for (auto [lo, hi] : fg_cols)
            if (virtual_col >= lo && virtual_col <= hi) return true;
        return false;
    };

    const int pad = 40;  // wider than any offset used below
    std::vector<char> covered(std::size_t(scan_hi - scan_lo + 1), 0);
    for (const RefOffsets& ref : refs) {
        for (int x = scan_lo - pad; x <= scan_hi + pad; ++x) {
            // What the reference actually sees at source column x: the
            // foreground wins wherever it covers the column.
            const bool fg = in_fg(x - ref.fg_off);
            const int landing = x - (fg ? ref.fg_off : ref.bg_off);
            if (landing >= scan_lo && landing <= scan_hi)
                covered[std::size_t(landing - scan_lo)] = 1;
        }
    }

    Runs holes;
    for (int c = scan_lo; c <= scan_hi; ++c) {
        if (covered[std::size_t(c - scan_lo)]) continue;
        if (!holes.empty() && holes.back().second == c - 1)
            holes.back().second = c;
        else
            holes.emplace_back(c, c);
    }
    return holes;
}

Runs as_runs(const std::optional<IntInterval>& iv) {
    if (!iv) return {};
    return {{iv->lo, iv->hi}};
}

Runs interp_oracle(int l_bg, int l_fg, int dd, const std::vector<int>& extra_dd) {
    // Left foreground ends at 0, gap spans [1, l_bg], right foreground
    // spans [l_bg+1, l_bg+l_fg]. The left foreground is effectively
    // semi-infinite so no background ever appears to its left.
    const std::vector<std::pair<int, int>> fg = {{-100000, 0}, {l_bg + 1, l_bg + l_fg}};
    std::vector<RefOffsets> refs = {{+2 * dd, +dd}, {-2 * dd, -dd}};
    for (int d : extra_dd) {
        refs.push_back({+2 * d, +d});
        refs.push_back({-2 * d, -d});
    }
    return painted_holes(fg, refs, -34, l_bg + l_fg + 34);
}

Runs extrap_oracle(int l_fg, const std::vector<int>& dds) {
    const std::vector<std::pair<int, int>> fg = {{0, l_fg - 1}};
    std::vector<RefOffsets> refs;
    for (int d : dds) refs.push_back({-2 * d, -d});
    return painted_holes(fg, refs, -34, l_fg + 34);
}

}  // namespace

TEST_CASE("interpolation prediction matches a brute-force painter") {
    int cases = 0;
    for (int l_bg = 1; l_bg <= 12; ++l_bg)
        for (int l_fg = 1; l_fg <= 12; ++l_fg)
            for (int dd_p = 1; dd_p <= 6; ++dd_p)
                for (int dd_s = dd_p + 1; dd_s <= 12; ++dd_s) {
                    ++cases;
                    const PredictionInput in{l_bg, l_fg, double(dd_p), double(dd_s)};
                    const HolePrediction pred = predict_interpolation_hole(in);
                    const Runs conv = interp_oracle(l_bg, l_fg, dd_p, {});
                    const Runs comp = interp_oracle(l_bg, l_fg, dd_p, {dd_s});
                    if (as_runs(pred.conventional) != conv ||
                        as_runs(pred.with_complementary) != comp ||
                        pred.eliminated != comp.empty()) {
                        CAPTURE(l_bg);
                        CAPTURE(l_fg);
                        CAPTURE(dd_p);
                        CAPTURE(dd_s);
                        REQUIRE(as_runs(pred.conventional) == conv);
                        REQUIRE(as_runs(pred.with_complementary) == comp);
                        REQUIRE(pred.eliminated == comp.empty());
                    }
                }
    CHECK(cases == 7344);
}

TEST_CASE("extrapolation prediction matches a brute-force painter") {
    int cases = 0;
    for (int l_fg = 1; l_fg <= 12; ++l_fg)
        for (int dd_p = 1; dd_p <= 6; ++dd_p)
            for (int dd_s = dd_p; dd_s <= 12; ++dd_s) {
                ++cases;
                const PredictionInput in{1, l_fg, double(dd_p), double(dd_s)};
                const HolePrediction pred = predict_extrapolation_hole(in);
                const Runs conv = extrap_oracle(l_fg, {dd_p});
                const Runs comp = extrap_oracle(l_fg, {dd_p, dd_s});
                if (as_runs(pred.conventional) != conv ||
                    as_runs(pred.with_complementary) != comp ||
                    pred.eliminated != comp.empty()) {
                    CAPTURE(l_fg);
                    CAPTURE(dd_p);
                    CAPTURE(dd_s);
                    REQUIRE(as_runs(pred.conventional) == conv);
                    REQUIRE(as_runs(pred.with_complementary) == comp);
                    REQUIRE(pred.eliminated == comp.empty());
                }
            }
    CHECK(cases == 684);
}

TEST_CASE("interpolation prediction worked examples") {
    SUBCASE("partial reduction") {
        const HolePrediction p = predict_interpolation_hole({2, 5, 3.0, 6.0});
        REQUIRE(p.conventional.has_value());
        CHECK(*p.conventional == IntInterval{1, 2});
        REQUIRE(p.with_complementary.has_value());
        CHECK(*p.with_complementary == IntInterval{1, 1});
        CHECK_FALSE(p.eliminated);
    }
    SUBCASE("full elimination") {
        const HolePrediction p = predict_interpolation_hole({2, 5, 3.0, 8.0});
        REQUIRE(p.conventional.has_value());
        CHECK(*p.conventional == IntInterval{1, 2});
        CHECK_FALSE(p.with_complementary.has_value());
        CHECK(p.eliminated);
    }
    SUBCASE("wide gap never opens a hole") {
        const HolePrediction p = predict_interpolation_hole({10, 5, 3.0, 6.0});
        CHECK_FALSE(p.conventional.has_value());
        CHECK_FALSE(p.with_complementary.has_value());
        CHECK(p.eliminated);
    }
}

TEST_CASE("extrapolation prediction worked examples") {
    SUBCASE("complementary too close to help") {
        const HolePrediction p = predict_extrapolation_hole({1, 5, 2.0, 4.0});
        CHECK(p.conventional == IntInterval{-2, -1});
        CHECK(p.with_complementary == IntInterval{-2, -1});
        CHECK_FALSE(p.eliminated);
    }
    SUBCASE("partial reduction") {
        const HolePrediction p = predict_extrapolation_hole({1, 5, 2.0, 6.0});
        CHECK(p.conventional == IntInterval{-2, -1});
        CHECK(p.with_complementary == IntInterval{-2, -2});
        CHECK_FALSE(p.eliminated);
    }
    SUBCASE("full elimination") {
        const HolePrediction p = predict_extrapolation_hole({1, 5, 2.0, 7.0});
        CHECK(p.conventional == IntInterval{-2, -1});
        CHECK_FALSE(p.with_complementary.has_value());
        CHECK(p.eliminated);
    }
    SUBCASE("equal distances reduce nothing") {
        const HolePrediction p = predict_extrapolation_hole({1, 5, 2.0, 2.0});
        CHECK(as_runs(p.conventional) == as_runs(p.with_complementary));
    }
    SUBCASE("complementary nearer than primary is rejected") {
        CHECK_THROWS_AS(predict_extrapolation_hole({1, 5, 3.0, 2.0}), std::domain_error);
    }
}

TEST_CASE("prediction input validation") {
    CHECK_THROWS_AS(predict_interpolation_hole({0, 5, 3.0, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(predict_interpolation_hole({2, 0, 3.0, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(predict_interpolation_hole({2, 5, 0.0, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(predict_interpolation_hole({2, 5, -1.0, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(predict_extrapolation_hole({1, 0, 2.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(predict_extrapolation_hole({1, 5, 2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("fractional disparity differences round to whole columns") {
    // 2.6 rounds to 3, so the boundaries match the integer case.
    const InterpScanline a = interpolation_boundaries({2, 5, 2.6, 6.0});
    const InterpScanline b = interpolation_boundaries({2, 5, 3.0, 6.0});
    CHECK(a.left_primary.y2 == b.left_primary.y2);
    CHECK(a.right_primary.y3 == b.right_primary.y3);
    CHECK(a.right_comp.y6 == b.right_comp.y6);
    // Halves round away from zero.
    const InterpScanline c = interpolation_boundaries({2, 5, 2.5, 6.0});
    CHECK(c.left_primary.y2 == 1 + 3);
}

TEST_CASE("boundary columns line up with the anchor") {
    const InterpScanline s = interpolation_boundaries({2, 5, 3.0, 6.0});
    CHECK(s.y1 == 0);
    CHECK(s.y4 == 3);
    CHECK(s.y5 == 7);
    CHECK(s.left_primary.y2 == 4);
    CHECK(s.left_primary.y3 == 5);
    CHECK(s.left_primary.y6 == 11);
    CHECK(s.right_primary.y2 == -2);
    CHECK(s.right_primary.y3 == -1);
    CHECK(s.right_primary.y6 == 5);
    CHECK(s.right_comp.y6 == 2);

    const ExtrapScanline e = extrapolation_boundaries({1, 5, 2.0, 6.0});
    CHECK(e.y2 == 0);
    CHECK(e.y3 == 4);
    CHECK(e.primary.y1 == -3);
    CHECK(e.primary.y4 == 3);
    CHECK(e.comp.y1 == -7);
    CHECK(e.comp.y4 == -1);
}

TEST_CASE("shift convention rounds the landing position") {
    // Zero baseline difference is the identity at any depth.
    CHECK(ShiftConvention::target_col(37, 2.5, 256.0, 0.1, 0.1) == 37);
    // f*(b_ref - b_tgt)/z = 256 * 0.03125 / 2 = 4: shift right by 4.
    CHECK(ShiftConvention::target_col(100, 2.0, 256.0, 0.03125, 0.0) == 104);
    // Same motion in the other direction.
    CHECK(ShiftConvention::target_col(100, 2.0, 256.0, 0.0, 0.03125) == 96);
    // Near halves: landing 100.5 rounds away from zero to 101.
    CHECK(ShiftConvention::target_col(100, 2.0, 256.0, 0.00390625, 0.0) == 101);
    // Nearer content shifts strictly more.
    const double s_near = ShiftConvention::shift_px(1.0, 256.0, 0.03125, 0.0);
    const double s_far = ShiftConvention::shift_px(4.0, 256.0, 0.03125, 0.0);
    CHECK(s_near > s_far);
    CHECK(s_near == doctest::Approx(8.0));
    CHECK(s_far == doctest::Approx(2.0));
}

TEST_CASE("disparity helper") {
    CHECK(disparity(2.0, 256.0, 0.03125) == doctest::Approx(4.0));
    CHECK(disparity(4.0, 256.0, -0.03125) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(disparity(0.0, 256.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(disparity(-1.0, 256.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(disparity(2.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("integer intervals") {
    const IntInterval iv{3, 7};
    CHECK(iv.length() == 5);
    CHECK(iv.contains(3));
    CHECK(iv.contains(7));
    CHECK_FALSE(iv.contains(8));
    CHECK(iv == IntInterval{3, 7});
}
