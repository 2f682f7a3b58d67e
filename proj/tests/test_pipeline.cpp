#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dibr/io_formats.hpp"
#include "dibr/metrics.hpp"
#include "dibr/synthesis.hpp"
#include "dibr/synthscene.hpp"
#include "json.hpp"

using namespace dibr;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path tmpdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("dibr_pipe_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::vector<View> render_rig(const ScenePreset& p) {
    std::vector<View> views;
    for (const CameraParams& cam : p.rig) views.push_back(render_view(p.scene, cam));
    return views;
}

SynthesisConfig interp_cfg(std::vector<int> primaries, std::vector<int> comps, FillMode fill) {
    SynthesisConfig cfg;
    cfg.mode = SynthesisMode::interpolation;
    cfg.fill = fill;
    cfg.primary_ids = std::move(primaries);
    cfg.comp_ids = std::move(comps);
    cfg.target_baseline_pos = 0.0;
    cfg.margin = 60;
    return cfg;
}

// Hole columns on one row, full width.
std::vector<int> hole_cols(const WarpedView& v, int row) {
    std::vector<int> cols;
    for (int x = 0; x < v.width(); ++x)
        if (v.is_hole(x, row)) cols.push_back(x);
    return cols;
}

View flat_view(int id, double baseline, std::uint8_t shade, int w = 16) {
    View v;
    v.camera = CameraParams{id, 256.0, baseline, 1.0, 16.0};
    v.texture = TextureImage::create(w, 1);
    v.depth = DepthMap::create(w, 1);
    for (int x = 0; x < w; ++x) {
        v.texture.at(x, 0, 0) = shade;
        v.texture.at(x, 0, 1) = shade;
        v.texture.at(x, 0, 2) = shade;
        v.depth.at(x, 0) = 51;  // metric depth 4
    }
    return v;
}

}  // namespace

TEST_CASE("two-foreground preset: complementary views close the gap stepwise") {
    const ScenePreset p = make_preset("fbfb");
    const std::vector<View> views = render_rig(p);

    SynthesisOutput conv = synthesize(views, interp_cfg({1, 2}, {}, FillMode::none));
    CHECK(conv.hole_before == 48);
    CHECK(conv.hole_after == 48);
    CHECK(hole_cols(conv.result, 70) == std::vector<int>{121, 122});

    SynthesisOutput two = synthesize(views, interp_cfg({1, 2}, {3, 4}, FillMode::full));
    CHECK(two.hole_before == 48);
    CHECK(two.hole_after == 24);
    CHECK(hole_cols(two.result, 70) == std::vector<int>{121});
    // pre_fill keeps the merged-but-unfilled state.
    CHECK(hole_cols(two.pre_fill, 70) == std::vector<int>{121, 122});

    SynthesisOutput four = synthesize(views, interp_cfg({1, 2}, {3, 4, 5, 6}, FillMode::full));
    CHECK(four.hole_after == 0);
    CHECK(hole_cols(four.result, 70).empty());
}

TEST_CASE("selective fill reproduces the full fill on the presets") {
    for (const char* name : {"fbfb", "bfbf"}) {
        CAPTURE(name);
        const ScenePreset p = make_preset(name);
        const std::vector<View> views = render_rig(p);

        const SynthesisOutput full =
            synthesize(views, interp_cfg({1, 2}, {3, 4}, FillMode::full));
        const SynthesisOutput sel =
            synthesize(views, interp_cfg({1, 2}, {3, 4}, FillMode::selective));

        CHECK(full.hole_after == sel.hole_after);
        CHECK(full.result.texture.pixels == sel.result.texture.pixels);
        CHECK(full.result.hole_mask == sel.result.hole_mask);
        CHECK(sel.fill_report.warp_cost_px * 10 < full.fill_report.warp_cost_px);
    }
}

TEST_CASE("single-foreground preset: extrapolation ladder") {
    const ScenePreset p = make_preset("bfb");
    const std::vector<View> views = render_rig(p);

    SynthesisConfig cfg;
    cfg.mode = SynthesisMode::extrapolation;
    cfg.primary_ids = {1};
    cfg.target_baseline_pos = 0.0;
    cfg.margin = 60;

    cfg.fill = FillMode::none;
    const SynthesisOutput conv = synthesize(views, cfg);
    CHECK(conv.hole_before == 48);
    CHECK(conv.hole_after == 48);
    // Columns 0..1 lie outside the primary's field of view (everything
    // shifts right by two columns); the margin keeps them out of the counts.
    CHECK(hole_cols(conv.result, 70) == std::vector<int>{0, 1, 118, 119});

    cfg.fill = FillMode::full;
    cfg.comp_ids = {2};
    const SynthesisOutput one = synthesize(views, cfg);
    CHECK(one.hole_after == 24);
    CHECK(hole_cols(one.result, 70) == std::vector<int>{0, 1, 118});

    cfg.comp_ids = {2, 3};
    const SynthesisOutput both = synthesize(views, cfg);
    CHECK(both.hole_after == 0);
}

TEST_CASE("directional inpainting clears every flanked hole without warps") {
    const ScenePreset p = make_preset("fbfb");
    const std::vector<View> views = render_rig(p);
    const SynthesisOutput out = synthesize(views, interp_cfg({1, 2}, {}, FillMode::inpaint));
    CHECK(out.hole_before == 48);
    CHECK(out.hole_after == 0);
    CHECK(out.fill_report.warp_cost_px == 0);
    CHECK(out.fill_report.filled_total == 288);  // both gap columns on all 144 rows
}

TEST_CASE("blend weights follow the baseline distances") {
    // Flat scene, two views that disagree on texture: the blend exposes the
    // weights exactly.
    const std::vector<View> views = {flat_view(1, -3.0 / 64.0, 100),
                                     flat_view(2, 3.0 / 64.0, 200)};
    SynthesisConfig cfg;
    cfg.mode = SynthesisMode::interpolation;
    cfg.primary_ids = {1, 2};
    cfg.margin = 0;

    SUBCASE("midpoint target weighs both views equally") {
        cfg.target_baseline_pos = 0.0;
        const SynthesisOutput out = synthesize(views, cfg);
        CHECK(out.hole_before == 0);
        CHECK(out.result.texture.at(8, 0, 0) == 150);   // overlap of both warps
        CHECK(out.result.texture.at(1, 0, 0) == 100);   // left view only
        CHECK(out.result.texture.at(14, 0, 0) == 200);  // right view only
    }
    SUBCASE("explicit weight override") {
        cfg.target_baseline_pos = 0.0;
        cfg.w_left = 0.25;
        const SynthesisOutput out = synthesize(views, cfg);
        CHECK(out.result.texture.at(8, 0, 0) == 175);
    }
    SUBCASE("target on a primary reproduces that view") {
        cfg.target_baseline_pos = -3.0 / 64.0;
        const SynthesisOutput out = synthesize(views, cfg);
        CHECK(out.hole_after == 0);
        for (int x = 0; x < 16; ++x) {
            CHECK(out.result.texture.at(x, 0, 0) == 100);
            CHECK(out.result.z_at(x, 0) == 4.0);
        }
    }
}

TEST_CASE("synthesis configuration validation") {
    const ScenePreset p = make_preset("fbfb");
    const std::vector<View> views = render_rig(p);

    CHECK_THROWS_AS(synthesize(views, interp_cfg({1}, {}, FillMode::none)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(views, interp_cfg({1, 2, 3}, {}, FillMode::none)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(views, interp_cfg({1, 99}, {}, FillMode::none)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(views, interp_cfg({1, 2}, {}, FillMode::full)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(views, interp_cfg({1, 2}, {3}, FillMode::inpaint)),
                    std::invalid_argument);

    SynthesisConfig extrap;
    extrap.mode = SynthesisMode::extrapolation;
    extrap.primary_ids = {1, 2};
    CHECK_THROWS_AS(synthesize(views, extrap), std::invalid_argument);

    SynthesisConfig wide = interp_cfg({1, 2}, {}, FillMode::none);
    wide.margin = 128;  // consumes the whole 256-column image
    CHECK_THROWS_AS(synthesize(views, wide), std::invalid_argument);
}

TEST_CASE("synthesis is deterministic") {
    const ScenePreset p = make_preset("fbfb");
    const std::vector<View> views = render_rig(p);
    const SynthesisOutput a = synthesize(views, interp_cfg({1, 2}, {3, 4}, FillMode::full));
    const SynthesisOutput b = synthesize(views, interp_cfg({1, 2}, {3, 4}, FillMode::full));
    CHECK(a.result.texture.pixels == b.result.texture.pixels);
    CHECK(a.result.zbuffer == b.result.zbuffer);
    CHECK(a.result.hole_mask == b.result.hole_mask);
    CHECK(a.fill_report.filled_mask == b.fill_report.filled_mask);
}

// --- command line tool -------------------------------------------------------

namespace {

int run_tool(const std::string& args) {
    const std::string cmd = std::string(MVSYNTH_BIN) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

// Dataset rendered once and shared by the CLI cases.
const fs::path& dataset_dir() {
    static const fs::path dir = [] {
        const fs::path d = tmpdir() / "fbfb";
        REQUIRE(run_tool("genscene --preset fbfb --out-dir " + d.string()) == 0);
        return d;
    }();
    return dir;
}

std::string view_args(const fs::path& d, std::initializer_list<int> ids) {
    std::string s;
    for (int id : ids) {
        const std::string n = std::to_string(id);
        s += " --view " + n + ":" + (d / ("view_" + n + ".ppm")).string() + ":" +
             (d / ("depth_" + n + ".pgm")).string();
    }
    return s;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("command line: generate, synthesize, evaluate") {
    const fs::path d = dataset_dir();
    REQUIRE(fs::exists(d / "rig.txt"));
    REQUIRE(fs::exists(d / "scene.txt"));
    REQUIRE(fs::exists(d / "view_6.ppm"));
    REQUIRE(fs::exists(d / "depth_6.pgm"));
    REQUIRE(fs::exists(d / "truth.ppm"));

    const fs::path out = tmpdir() / "runs";
    fs::create_directories(out);
    // The setup reruns once per subcase; start each entry from a fresh CSV
    // so the append-per-run contract stays checkable.
    fs::remove(out / "metrics.csv");
    const std::string common = "synthesize --rig " + (d / "rig.txt").string() +
                               view_args(d, {1, 2, 3, 4}) +
                               " --primary 1 --primary 2 --target-baseline 0 --truth " +
                               (d / "truth.ppm").string() + " --metrics-out " +
                               (out / "metrics.csv").string();

    REQUIRE(run_tool(common + " --fill none --label conv --out " +
                     (out / "conv.ppm").string()) == 0);
    REQUIRE(run_tool(common + " --comp 3 --comp 4 --fill full --label full2 --out " +
                     (out / "full2.ppm").string()) == 0);

    SUBCASE("meta sidecars carry the ladder numbers") {
        const json conv = read_json(out / "conv.meta.json");
        CHECK(conv.at("label") == "conv");
        CHECK(conv.at("hole_before") == 48);
        CHECK(conv.at("hole_after") == 48);
        CHECK(conv.at("filled_pixels") == 0);
        CHECK(conv.at("width") == 256);
        CHECK(conv.at("height") == 144);
        CHECK(conv.at("warp_cost_px") == 2 * 256 * 144);
        CHECK_FALSE(conv.contains("psnr_filled_db"));  // nothing was filled

        const json full2 = read_json(out / "full2.meta.json");
        CHECK(full2.at("hole_after") == 24);
        CHECK(full2.at("filled_pixels") > 0);
        CHECK(full2.at("primary_warp_cost_px") == 2 * 256 * 144);
        CHECK(full2.at("fill_warp_cost_px") == 2 * 256 * 144);  // two full comp warps
        // The synthetic views are pixel-exact, so filled content matches the
        // truth image and PSNR degenerates to infinity.
        CHECK(full2.at("psnr_filled_db") == "inf");
    }
    SUBCASE("sidecar masks exist and have the right shape") {
        CHECK(read_mask((out / "conv.holes.pgm").string(), 256, 144).size() ==
              std::size_t(256) * 144);
        CHECK(read_mask((out / "full2.fill.pgm").string(), 256, 144).size() ==
              std::size_t(256) * 144);
    }
    SUBCASE("appended metrics CSV has one row per run") {
        const auto lines = read_lines(out / "metrics.csv");
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == metrics_csv_header());
        CHECK(lines[1] == "conv,48,48,0,na,73728");
        const auto f = split_csv(lines[2]);
        REQUIRE(f.size() == 6);
        CHECK(f[0] == "full2");
        CHECK(f[1] == "48");
        CHECK(f[2] == "24");
        CHECK(f[3] == "50");
        CHECK(f[4] == "inf");  // exact synthetic content
        CHECK(f[5] == "147456");
    }
    SUBCASE("evaluate compares runs against the first") {
        const fs::path csv = out / "eval.csv";
        REQUIRE(run_tool("evaluate --truth " + (d / "truth.ppm").string() + " --run " +
                         (out / "conv.meta.json").string() + " --run " +
                         (out / "full2.meta.json").string() + " --csv " + csv.string()) == 0);
        const auto lines = read_lines(csv);
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == metrics_csv_header());
        CHECK(lines[1] == "conv,48,48,0,na,73728");
        const auto f = split_csv(lines[2]);
        CHECK(f[0] == "full2");
        CHECK(f[3] == "50");  // holes halved relative to the first run
        CHECK(f[4] == "inf");
    }
    SUBCASE("target-view renders the reference itself") {
        const fs::path tv = out / "tv1.ppm";
        REQUIRE(run_tool("synthesize --rig " + (d / "rig.txt").string() +
                         view_args(d, {1, 2}) +
                         " --primary 1 --primary 2 --target-view 1 --fill none --out " +
                         tv.string()) == 0);
        const TextureImage a = read_texture(tv.string());
        const TextureImage b = read_texture((d / "view_1.ppm").string());
        CHECK(a.pixels == b.pixels);
    }
}

TEST_CASE("command line: raw YUV input") {
    const fs::path d = tmpdir() / "yuv";
    fs::create_directories(d);

    // 64x16 flat clip: texture mid-gray, depth sample 51 (metric 4).
    const auto write_yuv = [&](const char* name, std::uint8_t y_value) {
        std::ofstream out(d / name, std::ios::binary);
        std::vector<char> y(64 * 16, char(y_value)), c(64 * 16 / 2, char(128));
        out.write(y.data(), std::streamsize(y.size()));
        out.write(c.data(), std::streamsize(c.size()));
    };
    write_yuv("tex.yuv", 128);
    write_yuv("depth.yuv", 51);
    std::ofstream(d / "rig.txt") << "1 -0.046875 256 1 16\n2 0.046875 256 1 16\n";

    const fs::path out = d / "flat.ppm";
    REQUIRE(run_tool("synthesize --rig " + (d / "rig.txt").string() + " --view 1:" +
                     (d / "tex.yuv").string() + ":" + (d / "depth.yuv").string() +
                     " --view 2:" + (d / "tex.yuv").string() + ":" +
                     (d / "depth.yuv").string() +
                     " --primary 1 --primary 2 --target-baseline 0 --fill none --margin 0" +
                     " --yuv-size 64 16 --out " + out.string()) == 0);

    const json meta = read_json(d / "flat.meta.json");
    CHECK(meta.at("hole_before") == 0);
    CHECK(meta.at("hole_after") == 0);
    const TextureImage img = read_texture(out.string());
    CHECK(img.width == 64);
    CHECK(img.at(30, 8, 0) == 128);
    CHECK(img.at(30, 8, 2) == 128);
}

TEST_CASE("command line: exit codes") {
    const fs::path d = dataset_dir();
    const std::string rig = (d / "rig.txt").string();
    const std::string views = view_args(d, {1, 2});
    const std::string out = (tmpdir() / "err.ppm").string();

    SUBCASE("usage errors exit 1") {
        CHECK(run_tool("") == 1);  // missing subcommand
        CHECK(run_tool("synthesize --rig " + rig) == 1);  // missing required options
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --primary 2 --out " + out) == 1);  // no target
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --primary 2 --target-baseline 0 --target-view 1 --out " +
                       out) == 1);
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --primary 2 --target-baseline 0 --fill full --out " +
                       out) == 1);  // full without comps
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --primary 2 --comp 3 --target-baseline 0" +
                       " --fill inpaint --out " + out) == 1);
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --primary 2 --target-baseline 0 --mode sideways --out " +
                       out) == 1);
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --target-baseline 0 --out " + out) == 1);  // interp needs 2
        CHECK(run_tool("synthesize --rig " + rig + views +
                       " --primary 1 --primary 99 --target-baseline 0 --out " + out) == 1);
        CHECK(run_tool("synthesize --rig " + rig + " --view 1:texture_only" +
                       " --primary 1 --primary 2 --target-baseline 0 --out " + out) == 1);
        CHECK(run_tool("genscene --out-dir " + (tmpdir() / "nothing").string()) == 1);
    }
    SUBCASE("data errors exit 2") {
        CHECK(run_tool("synthesize --rig /no/such/rig.txt" + views +
                       " --primary 1 --primary 2 --target-baseline 0 --out " + out) == 2);
        CHECK(run_tool("evaluate --truth " + (d / "truth.ppm").string() +
                       " --run /no/such/meta.json") == 2);
        CHECK(run_tool("genscene --preset nosuch --out-dir " +
                       (tmpdir() / "nothing2").string()) == 2);
    }
}
