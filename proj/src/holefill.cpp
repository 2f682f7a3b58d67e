#include "dibr/holefill.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dibr/warper.hpp"

namespace dibr {

FillOptions default_fill_options(const CameraParams& cam) {
    FillOptions opt;
    opt.discontinuity_threshold = 0.10 * (cam.z_far - cam.z_near);
    return opt;
}

BackgroundEstimate estimate_background_depth(const WarpedView& view, const HoleRun& run,
                                             const FillOptions& opt) {
    const int y = run.row;
    const int left_col = run.start_col - 1;
    const int right_col = run.end_col + 1;
    const bool has_left = left_col >= 0 && !view.is_hole(left_col, y);
    const bool has_right = right_col < view.width() && !view.is_hole(right_col, y);

    if (!has_left && !has_right)
        throw std::invalid_argument("hole run at row " + std::to_string(y) +
                                    " has no flanking pixel to estimate background from");
    if (has_left != has_right) {
        const int c = has_left ? left_col : right_col;
        return {view.z_at(c, y), has_left ? Side::left : Side::right};
    }

    const double zl = view.z_at(left_col, y);
    const double zr = view.z_at(right_col, y);
    if (std::abs(zl - zr) > opt.discontinuity_threshold)
        return zl > zr ? BackgroundEstimate{zl, Side::left} : BackgroundEstimate{zr, Side::right};

    // Both flanks belong to the occluding surface; the surface the hole
    // exposes must be deeper. Search outward for the farthest depth nearby.
    // The strict comparison under outward scan order prefers the nearer
    // pixel on exact depth ties, left before right.
    double best_z = -1.0;
    Side best_side = Side::left;
    for (int d = 1; d <= opt.fallback_window; ++d) {
        const int cl = run.start_col - d;
        const int cr = run.end_col + d;
        if (cl >= 0 && !view.is_hole(cl, y) && view.z_at(cl, y) > best_z) {
            best_z = view.z_at(cl, y);
            best_side = Side::left;
        }
        if (cr < view.width() && !view.is_hole(cr, y) && view.z_at(cr, y) > best_z) {
            best_z = view.z_at(cr, y);
            best_side = Side::right;
        }
    }
    return {best_z, best_side};
}

std::vector<SelectivePlan> plan_selective(const WarpedView& view,
                                          const std::vector<HoleRun>& runs, const View& comp,
                                          double target_baseline_pos, const FillOptions& opt) {
    if (runs.empty()) throw std::invalid_argument("plan_selective: no hole runs given");
    const double f = comp.camera.focal_length_px;
    std::vector<SelectivePlan> plans;
    plans.reserve(runs.size());
    for (const HoleRun& run : runs) {
        const BackgroundEstimate bg = estimate_background_depth(view, run, opt);
        SelectivePlan plan;
        plan.run = run;
        plan.z_bg = bg.z;
        plan.background_side = bg.side;
        plan.source_view_id = comp.camera.view_id;

        // The backward map is a uniform shift at fixed depth, so anchoring at
        // the run end opposite the background and spanning run length plus
        // margin covers every mapped hole column and grows the extra columns
        // toward the background.
        const int edge_col = bg.side == Side::left ? run.end_col : run.start_col;
        const int mapped =
            backward_map(edge_col, bg.z, target_baseline_pos, comp.camera.baseline_pos, f);
        const int claim = run.length() + opt.extra_pixels;
        int lo, hi;
        if (bg.side == Side::left) {
            hi = mapped;
            lo = mapped - claim + 1;
        } else {
            lo = mapped;
            hi = mapped + claim - 1;
        }
        lo = std::max(lo, 0);
        hi = std::min(hi, comp.texture.width - 1);
        if (lo <= hi) plan.source_cols = IntInterval{lo, hi};
        plans.push_back(plan);
    }
    return plans;
}

namespace {

// Writes candidate pixels into base's holes, nearest depth first; candidates
// arrive in view order, so the strict test keeps earlier views on ties.
FillResult apply_candidates(const WarpedView& base, const std::vector<WarpedView>& candidates,
                            long long warp_cost) {
    FillResult res;
    res.view = base;
    const int w = base.width(), h = base.height();
    res.report.filled_mask.assign(std::size_t(w) * h, 0);
    res.report.warp_cost_px = warp_cost;

    std::vector<double> best(std::size_t(w) * h, kEmptyDepth);
    for (const WarpedView& cand : candidates) {
        if (cand.width() != w || cand.height() != h)
            throw std::invalid_argument("fill candidate dimensions differ from base");
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!base.is_hole(x, y) || cand.is_hole(x, y)) continue;
                const std::size_t i = std::size_t(y) * w + x;
                const double z = cand.z_at(x, y);
                if (z < best[i]) {
                    best[i] = z;
                    res.view.set_pixel(x, y, cand.texture.at(x, y, 0), cand.texture.at(x, y, 1),
                                       cand.texture.at(x, y, 2), z);
                    res.report.filled_mask[i] = 1;
                }
            }
        }
    }
    for (std::uint8_t m : res.report.filled_mask) res.report.filled_total += m;

    // Per-run accounting against the pre-fill holes (whole image window).
    for (const HoleRun& run : extract_hole_runs(base, 0)) {
        int count = 0;
        for (int x = run.start_col; x <= run.end_col; ++x)
            count += res.report.filled_mask[std::size_t(run.row) * w + x];
        res.report.run_fill_counts.emplace_back(run, count);
    }
    return res;
}

}  // namespace

FillResult fill_full(const WarpedView& base, const std::vector<View>& comps,
                     double target_baseline_pos) {
    if (comps.empty()) throw std::invalid_argument("fill_full: need at least one view");
    std::vector<WarpedView> candidates;
    long long cost = 0;
    candidates.reserve(comps.size());
    for (const View& comp : comps) {
        candidates.push_back(forward_warp({comp, target_baseline_pos}));
        cost += static_cast<long long>(comp.texture.width) * comp.texture.height;
    }
    return apply_candidates(base, candidates, cost);
}

FillResult fill_selective(const WarpedView& base, const std::vector<View>& comps,
                          double target_baseline_pos, const FillOptions& opt) {
    if (comps.empty()) throw std::invalid_argument("fill_selective: need at least one view");
    const std::vector<HoleRun> runs = extract_hole_runs(base, 0);
    if (runs.empty()) {
        FillResult res;
        res.view = base;
        res.report.filled_mask.assign(std::size_t(base.width()) * base.height(), 0);
        return res;
    }

    std::vector<WarpedView> candidates;
    long long cost = 0;
    for (const View& comp : comps) {
        if (comp.texture.width != base.width() || comp.texture.height != base.height())
            throw std::invalid_argument("fill_selective: view dimensions differ from base");
        ColumnFilter filter(comp.texture.height);
        for (const SelectivePlan& plan :
             plan_selective(base, runs, comp, target_baseline_pos, opt)) {
            if (plan.source_cols) filter[plan.run.row].push_back(*plan.source_cols);
        }
        // Count each source pixel once even when neighboring runs claim
        // overlapping intervals.
        for (auto& spans : filter) {
            std::sort(spans.begin(), spans.end(),
                      [](const IntInterval& a, const IntInterval& b) { return a.lo < b.lo; });
            int covered_to = -1;
            for (const IntInterval& iv : spans) {
                const int lo = std::max(iv.lo, covered_to + 1);
                if (lo <= iv.hi) cost += iv.hi - lo + 1;
                covered_to = std::max(covered_to, iv.hi);
            }
        }
        candidates.push_back(forward_warp({comp, target_baseline_pos, &filter}));
    }
    return apply_candidates(base, candidates, cost);
}

FillResult fill_selective(const WarpedView& base, const std::vector<View>& comps,
                          double target_baseline_pos) {
    if (comps.empty()) throw std::invalid_argument("fill_selective: need at least one view");
    return fill_selective(base, comps, target_baseline_pos,
                          default_fill_options(comps.front().camera));
}

WarpedView inpaint_baseline(const WarpedView& base, const FillOptions& opt) {
    WarpedView out = base;
    for (const HoleRun& run : extract_hole_runs(base, 0)) {
        const int y = run.row;
        const int left_col = run.start_col - 1;
        const int right_col = run.end_col + 1;
        const bool has_left = left_col >= 0 && !base.is_hole(left_col, y);
        const bool has_right = right_col < base.width() && !base.is_hole(right_col, y);
        if (!has_left && !has_right) continue;

        Side side;
        if (has_left != has_right) {
            side = has_left ? Side::left : Side::right;
        } else {
            side = estimate_background_depth(base, run, opt).side;
        }
        const int c = side == Side::left ? left_col : right_col;
        for (int x = run.start_col; x <= run.end_col; ++x)
            out.set_pixel(x, y, base.texture.at(c, y, 0), base.texture.at(c, y, 1),
                          base.texture.at(c, y, 2), base.z_at(c, y));
    }
    return out;
}

}  // namespace dibr
