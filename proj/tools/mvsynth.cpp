// mvsynth: synthesize virtual viewpoints from multiview texture+depth sets,
// generate synthetic test scenes, and evaluate hole-fill configurations.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dibr/core_types.hpp"
#include "dibr/io_formats.hpp"
#include "dibr/metrics.hpp"
#include "dibr/synthesis.hpp"
#include "dibr/synthscene.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Flag combinations the parser can't reject on its own; exits with code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ViewSpec {
    int id = 0;
    std::string texture;
    std::string depth;
};

ViewSpec parse_view_spec(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw UsageError("--view expects ID:TEXTURE:DEPTH, got '" + s + "'");
    ViewSpec spec;
    try {
        std::size_t used = 0;
        spec.id = std::stoi(s.substr(0, c1), &used);
        if (used != c1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("--view id must be an integer in '" + s + "'");
    }
    spec.texture = s.substr(c1 + 1, c2 - c1 - 1);
    spec.depth = s.substr(c2 + 1);
    if (spec.texture.empty() || spec.depth.empty())
        throw UsageError("--view paths must be non-empty in '" + s + "'");
    return spec;
}

bool is_yuv(const std::string& path) {
    return path.size() >= 4 && path.substr(path.size() - 4) == ".yuv";
}

struct YuvArgs {
    int width = 0;
    int height = 0;
    int frame = 0;
};

dibr::View load_view(const ViewSpec& spec, const dibr::CameraParams& cam,
                     const std::optional<YuvArgs>& yuv) {
    const auto need_yuv = [&]() -> const YuvArgs& {
        if (!yuv) throw UsageError("YUV input '" + spec.texture + "' needs --yuv-size");
        return *yuv;
    };
    dibr::View v;
    v.camera = cam;
    v.texture = is_yuv(spec.texture)
                    ? dibr::read_texture_yuv420(spec.texture, need_yuv().width,
                                                need_yuv().height, need_yuv().frame)
                    : dibr::read_texture(spec.texture);
    v.depth = is_yuv(spec.depth)
                  ? dibr::read_depth_yuv420(spec.depth, need_yuv().width, need_yuv().height,
                                            need_yuv().frame)
                  : dibr::read_depth(spec.depth);
    dibr::validate(v);
    return v;
}

const dibr::CameraParams& rig_cam(const std::vector<dibr::CameraParams>& rig, int id) {
    for (const auto& cam : rig)
        if (cam.view_id == id) return cam;
    throw UsageError("view id " + std::to_string(id) + " is not in the rig");
}

std::string sidecar(const std::string& out_path, const std::string& suffix) {
    fs::path p(out_path);
    const fs::path base = p.parent_path() / p.stem();
    return base.string() + suffix;
}

void append_metrics_row(const std::string& path, const dibr::MetricsRow& row) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    if (fresh) out << dibr::metrics_csv_header() << '\n';
    out << dibr::to_csv(row) << '\n';
}

// --- synthesize -----------------------------------------------------------

struct SynthArgs {
    std::string rig_path;
    std::vector<std::string> view_specs;
    std::string mode = "interp";
    std::vector<int> primary_ids;
    std::vector<int> comp_ids;
    std::string fill = "none";
    std::optional<double> target_baseline;
    std::optional<int> target_view;
    int margin = 60;
    int extra_pixels = 2;
    std::string out_path;
    std::string overlay_path;
    std::string metrics_path;
    std::string truth_path;
    std::string label;
    std::optional<std::vector<int>> yuv_size;
    int yuv_frame = 0;
};

int run_synthesize(const SynthArgs& a) {
    const std::vector<dibr::CameraParams> rig = dibr::read_rig(a.rig_path);

    std::optional<YuvArgs> yuv;
    if (a.yuv_size) {
        if (a.yuv_size->size() != 2)
            throw UsageError("--yuv-size expects WIDTH HEIGHT");
        yuv = YuvArgs{(*a.yuv_size)[0], (*a.yuv_size)[1], a.yuv_frame};
    }

    std::vector<dibr::View> views;
    for (const std::string& s : a.view_specs) {
        const ViewSpec spec = parse_view_spec(s);
        views.push_back(load_view(spec, rig_cam(rig, spec.id), yuv));
    }
    if (views.empty()) throw UsageError("need at least one --view");

    dibr::SynthesisConfig cfg;
    if (a.mode == "interp")
        cfg.mode = dibr::SynthesisMode::interpolation;
    else if (a.mode == "extrap")
        cfg.mode = dibr::SynthesisMode::extrapolation;
    else
        throw UsageError("--mode must be interp or extrap");

    if (a.fill == "none")
        cfg.fill = dibr::FillMode::none;
    else if (a.fill == "full")
        cfg.fill = dibr::FillMode::full;
    else if (a.fill == "selective")
        cfg.fill = dibr::FillMode::selective;
    else if (a.fill == "inpaint")
        cfg.fill = dibr::FillMode::inpaint;
    else
        throw UsageError("--fill must be none, full, selective or inpaint");

    cfg.primary_ids = a.primary_ids;
    cfg.comp_ids = a.comp_ids;
    cfg.margin = a.margin;

    const std::size_t want_primaries = cfg.mode == dibr::SynthesisMode::interpolation ? 2 : 1;
    if (cfg.primary_ids.size() != want_primaries)
        throw UsageError(a.mode + " mode needs exactly " + std::to_string(want_primaries) +
                         " --primary view(s)");
    if ((cfg.fill == dibr::FillMode::full || cfg.fill == dibr::FillMode::selective) &&
        cfg.comp_ids.empty())
        throw UsageError("--fill " + a.fill + " needs at least one --comp view");
    if (cfg.fill == dibr::FillMode::inpaint && !cfg.comp_ids.empty())
        throw UsageError("--fill inpaint uses no --comp views");
    for (int id : cfg.primary_ids) rig_cam(rig, id);
    for (int id : cfg.comp_ids) rig_cam(rig, id);

    if (a.target_baseline && a.target_view)
        throw UsageError("give either --target-baseline or --target-view, not both");
    if (a.target_view)
        cfg.target_baseline_pos = rig_cam(rig, *a.target_view).baseline_pos;
    else if (a.target_baseline)
        cfg.target_baseline_pos = *a.target_baseline;
    else
        throw UsageError("need --target-baseline or --target-view");

    dibr::FillOptions opt = dibr::default_fill_options(rig.front());
    opt.extra_pixels = a.extra_pixels;
    cfg.fill_options = opt;

    const dibr::SynthesisOutput out = dibr::synthesize(views, cfg);

    dibr::write_texture(a.out_path, out.result.texture);
    dibr::write_mask(sidecar(a.out_path, ".holes.pgm"), out.pre_fill.hole_mask,
                     out.pre_fill.width(), out.pre_fill.height());
    dibr::write_mask(sidecar(a.out_path, ".fill.pgm"), out.fill_report.filled_mask,
                     out.result.width(), out.result.height());
    if (!a.overlay_path.empty()) dibr::write_hole_overlay(out.result, a.overlay_path);

    std::optional<double> psnr;
    if (!a.truth_path.empty()) {
        const dibr::TextureImage truth = dibr::read_texture(a.truth_path);
        if (out.fill_report.filled_total > 0)
            psnr = dibr::psnr_masked(out.result.texture, truth, out.fill_report.filled_mask);
    }

    const long long primary_cost = static_cast<long long>(out.result.width()) *
                                   out.result.height() *
                                   static_cast<long long>(cfg.primary_ids.size());
    const long long total_cost = primary_cost + out.fill_report.warp_cost_px;

    const std::string label = a.label.empty() ? a.mode + "+" + a.fill : a.label;
    dibr::MetricsRow row;
    row.config = label;
    row.hole_before = out.hole_before;
    row.hole_after = out.hole_after;
    row.reduction = dibr::reduction_pct(out.hole_before, out.hole_after);
    row.psnr_filled_db = psnr;
    row.warp_cost_px = total_cost;
    if (!a.metrics_path.empty()) append_metrics_row(a.metrics_path, row);

    json meta;
    meta["label"] = label;
    meta["mode"] = a.mode;
    meta["fill"] = a.fill;
    meta["margin"] = a.margin;
    meta["width"] = out.result.width();
    meta["height"] = out.result.height();
    meta["target_baseline"] = cfg.target_baseline_pos;
    meta["hole_before"] = out.hole_before;
    meta["hole_after"] = out.hole_after;
    meta["filled_pixels"] = out.fill_report.filled_total;
    meta["fill_warp_cost_px"] = out.fill_report.warp_cost_px;
    meta["primary_warp_cost_px"] = primary_cost;
    meta["warp_cost_px"] = total_cost;
    meta["out"] = a.out_path;
    meta["holes_mask"] = sidecar(a.out_path, ".holes.pgm");
    meta["fill_mask"] = sidecar(a.out_path, ".fill.pgm");
    // JSON has no infinity; mirror the CSV convention for a perfect fill.
    if (psnr) meta["psnr_filled_db"] = std::isinf(*psnr) ? json("inf") : json(*psnr);
    std::ofstream mf(sidecar(a.out_path, ".meta.json"));
    if (!mf) throw std::runtime_error("cannot write meta file");
    mf << meta.dump(2) << '\n';

    std::cout << dibr::metrics_csv_header() << '\n' << dibr::to_csv(row) << '\n';
    return 0;
}

// --- evaluate ---------------------------------------------------------------

int run_evaluate(const std::string& truth_path, const std::vector<std::string>& meta_paths,
                 const std::string& csv_path) {
    const dibr::TextureImage truth = dibr::read_texture(truth_path);

    std::vector<dibr::MetricsRow> rows;
    std::optional<long long> base_after;
    for (const std::string& mp : meta_paths) {
        std::ifstream in(mp);
        if (!in) throw std::runtime_error(mp + ": cannot open");
        json meta;
        try {
            in >> meta;
        } catch (const json::exception& e) {
            throw std::runtime_error(mp + ": bad meta file: " + e.what());
        }

        const int w = meta.at("width").get<int>();
        const int h = meta.at("height").get<int>();
        if (w != truth.width || h != truth.height)
            throw std::runtime_error(mp + ": run dimensions " + std::to_string(w) + "x" +
                                     std::to_string(h) + " do not match the truth image");

        dibr::MetricsRow row;
        row.config = meta.at("label").get<std::string>();
        row.hole_before = meta.at("hole_before").get<long long>();
        row.hole_after = meta.at("hole_after").get<long long>();
        row.warp_cost_px = meta.at("warp_cost_px").get<long long>();

        if (!base_after) base_after = row.hole_after;
        // Reduction is reported against the first configuration's residual
        // holes; a configuration with more holes than the baseline gets na.
        if (row.hole_after <= *base_after)
            row.reduction = dibr::reduction_pct(*base_after, row.hole_after);

        const dibr::TextureImage img = dibr::read_texture(meta.at("out").get<std::string>());
        if (img.width != truth.width || img.height != truth.height)
            throw std::runtime_error(mp + ": output image does not match the truth size");
        const auto mask =
            dibr::read_mask(meta.at("fill_mask").get<std::string>(), truth.width, truth.height);
        if (std::find(mask.begin(), mask.end(), 1) != mask.end())
            row.psnr_filled_db = dibr::psnr_masked(img, truth, mask);
        rows.push_back(row);
    }

    std::ostringstream table;
    table << dibr::metrics_csv_header() << '\n';
    for (const auto& row : rows) table << dibr::to_csv(row) << '\n';
    std::cout << table.str();
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error(csv_path + ": cannot open for writing");
        out << table.str();
    }
    return 0;
}

// --- genscene ---------------------------------------------------------------

int run_genscene(const std::string& preset, const std::string& scene_path,
                 const std::string& rig_path, double target_baseline,
                 const std::string& out_dir) {
    dibr::ScenePreset bundle;
    if (!preset.empty()) {
        bundle = dibr::make_preset(preset);
    } else {
        if (scene_path.empty() || rig_path.empty())
            throw UsageError("genscene needs --preset, or --scene together with --rig");
        bundle.scene = dibr::load_scene(scene_path);
        bundle.rig = dibr::read_rig(rig_path);
        bundle.virtual_cam = bundle.rig.front();
        bundle.virtual_cam.view_id = 0;
        bundle.virtual_cam.baseline_pos = target_baseline;
    }

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    dibr::write_rig((dir / "rig.txt").string(), bundle.rig);
    dibr::save_scene(bundle.scene, (dir / "scene.txt").string());
    for (const dibr::CameraParams& cam : bundle.rig) {
        const dibr::View v = dibr::render_view(bundle.scene, cam);
        const std::string id = std::to_string(cam.view_id);
        dibr::write_view((dir / ("view_" + id + ".ppm")).string(),
                         (dir / ("depth_" + id + ".pgm")).string(), v);
    }
    const dibr::View truth = dibr::render_ground_truth(bundle.scene, bundle.virtual_cam);
    dibr::write_view((dir / "truth.ppm").string(), (dir / "truth_depth.pgm").string(), truth);
    std::cout << "wrote " << bundle.rig.size() << " views + truth to " << out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiview depth-image-based view synthesis toolkit"};
    app.require_subcommand(1);

    SynthArgs sa;
    CLI::App* synth = app.add_subcommand("synthesize", "warp, merge and fill a virtual view");
    synth->add_option("--rig", sa.rig_path, "rig description file")->required();
    synth->add_option("--view", sa.view_specs, "view as ID:TEXTURE:DEPTH (repeatable)")
        ->required();
    synth->add_option("--mode", sa.mode, "interp|extrap");
    synth->add_option("--primary", sa.primary_ids, "primary view id (repeatable)")->required();
    synth->add_option("--comp", sa.comp_ids, "complementary view id (repeatable)");
    synth->add_option("--fill", sa.fill, "none|full|selective|inpaint");
    synth->add_option("--target-baseline", sa.target_baseline, "target viewpoint position");
    synth->add_option("--target-view", sa.target_view, "target viewpoint as a rig view id");
    synth->add_option("--margin", sa.margin, "metric margin in pixels")->check(CLI::NonNegativeNumber);
    synth->add_option("--extra-pixels", sa.extra_pixels, "extra columns per selective run")
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--out", sa.out_path, "synthesized image (.ppm/.png)")->required();
    synth->add_option("--overlay", sa.overlay_path, "hole overlay image path");
    synth->add_option("--metrics-out", sa.metrics_path, "CSV report to append to");
    synth->add_option("--truth", sa.truth_path, "ground-truth image for filled-pixel PSNR");
    synth->add_option("--label", sa.label, "configuration label for reports");
    synth->add_option("--yuv-size", sa.yuv_size, "width height of raw YUV inputs")
        ->expected(2);
    synth->add_option("--yuv-frame", sa.yuv_frame, "frame index into raw YUV inputs");

    std::string ev_truth, ev_csv;
    std::vector<std::string> ev_runs;
    CLI::App* ev = app.add_subcommand("evaluate", "compare synthesized configurations");
    ev->add_option("--truth", ev_truth, "ground-truth image")->required();
    ev->add_option("--run", ev_runs, "meta.json of a synthesize run (repeatable)")->required();
    ev->add_option("--csv", ev_csv, "also write the table to this file");

    std::string gs_preset, gs_scene, gs_rig, gs_out;
    double gs_target = 0.0;
    CLI::App* gs = app.add_subcommand("genscene", "render a synthetic multiview dataset");
    gs->add_option("--preset", gs_preset, "fbfb|bfbf|bfb|multi");
    gs->add_option("--scene", gs_scene, "scene description file");
    gs->add_option("--rig", gs_rig, "rig file for --scene");
    gs->add_option("--target-baseline", gs_target, "virtual viewpoint for the truth render");
    gs->add_option("--out-dir", gs_out, "output directory")->required();

    try {
        app.parse(argc, argv);
        if (*synth) return run_synthesize(sa);
        if (*ev) return run_evaluate(ev_truth, ev_runs, ev_csv);
        if (*gs) return run_genscene(gs_preset, gs_scene, gs_rig, gs_target, gs_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
