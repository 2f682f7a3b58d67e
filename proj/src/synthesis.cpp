#include "dibr/synthesis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dibr/merger.hpp"
#include "dibr/metrics.hpp"
#include "dibr/warper.hpp"

namespace dibr {

namespace {

const View& view_by_id(const std::vector<View>& views, int id) {
    for (const View& v : views)
        if (v.camera.view_id == id) return v;
    throw std::invalid_argument("unknown view id " + std::to_string(id));
}

}  // namespace

SynthesisOutput synthesize(const std::vector<View>& views, const SynthesisConfig& cfg) {
    if (views.empty()) throw std::invalid_argument("synthesize: no views loaded");

    const bool interp = cfg.mode == SynthesisMode::interpolation;
    if (interp && cfg.primary_ids.size() != 2)
        throw std::invalid_argument("interpolation needs exactly 2 primary views, got " +
                                    std::to_string(cfg.primary_ids.size()));
    if (!interp && cfg.primary_ids.size() != 1)
        throw std::invalid_argument("extrapolation needs exactly 1 primary view, got " +
                                    std::to_string(cfg.primary_ids.size()));
    const bool needs_comps = cfg.fill == FillMode::full || cfg.fill == FillMode::selective;
    if (needs_comps && cfg.comp_ids.empty())
        throw std::invalid_argument("this fill mode needs at least one complementary view");
    if (cfg.fill == FillMode::inpaint && !cfg.comp_ids.empty())
        throw std::invalid_argument("inpaint uses no complementary views");

    SynthesisOutput out;
    if (interp) {
        const View* a = &view_by_id(views, cfg.primary_ids[0]);
        const View* b = &view_by_id(views, cfg.primary_ids[1]);
        if (a->camera.baseline_pos > b->camera.baseline_pos) std::swap(a, b);
        const WarpedView wl = forward_warp({*a, cfg.target_baseline_pos});
        const WarpedView wr = forward_warp({*b, cfg.target_baseline_pos});

        double w_left;
        if (cfg.w_left) {
            w_left = *cfg.w_left;
        } else {
            const double bl = a->camera.baseline_pos, br = b->camera.baseline_pos;
            // Distance-weighted: a primary sitting on the target gets all
            // the weight; equal distances blend evenly.
            w_left = bl == br ? 0.5 : (br - cfg.target_baseline_pos) / (br - bl);
            w_left = std::clamp(w_left, 0.0, 1.0);
        }
        out.pre_fill = merge(wl, wr, w_left, default_depth_blend_threshold(a->camera));
    } else {
        out.pre_fill = forward_warp({view_by_id(views, cfg.primary_ids[0]),
                                     cfg.target_baseline_pos});
    }

    std::vector<View> comps;
    comps.reserve(cfg.comp_ids.size());
    for (int id : cfg.comp_ids) comps.push_back(view_by_id(views, id));

    const FillOptions opt =
        cfg.fill_options ? *cfg.fill_options
                         : default_fill_options(view_by_id(views, cfg.primary_ids[0]).camera);

    switch (cfg.fill) {
        case FillMode::none:
            out.result = out.pre_fill;
            out.fill_report.filled_mask.assign(
                std::size_t(out.pre_fill.width()) * out.pre_fill.height(), 0);
            break;
        case FillMode::full: {
            FillResult fr = fill_full(out.pre_fill, comps, cfg.target_baseline_pos);
            out.result = std::move(fr.view);
            out.fill_report = std::move(fr.report);
            break;
        }
        case FillMode::selective: {
            FillResult fr = fill_selective(out.pre_fill, comps, cfg.target_baseline_pos, opt);
            out.result = std::move(fr.view);
            out.fill_report = std::move(fr.report);
            break;
        }
        case FillMode::inpaint: {
            out.result = inpaint_baseline(out.pre_fill, opt);
            const std::size_t n = std::size_t(out.pre_fill.width()) * out.pre_fill.height();
            out.fill_report.filled_mask.assign(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (out.pre_fill.hole_mask[i] && !out.result.hole_mask[i]) {
                    out.fill_report.filled_mask[i] = 1;
                    ++out.fill_report.filled_total;
                }
            }
            break;
        }
    }

    out.hole_before = hole_count(out.pre_fill, cfg.margin);
    out.hole_after = hole_count(out.result, cfg.margin);
    return out;
}

}  // namespace dibr
