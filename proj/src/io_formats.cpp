#include "dibr/io_formats.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dibr {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// --- Netpbm (binary P5/P6) ---------------------------------------------

// Reads the next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

struct PnmHeader {
    int width = 0;
    int height = 0;
};

PnmHeader read_pnm_header(std::istream& in, const std::string& path, const char* magic) {
    if (pnm_token(in) != magic) fail(path, std::string("not a binary ") + magic + " file");
    PnmHeader h;
    int maxval = 0;
    try {
        h.width = std::stoi(pnm_token(in));
        h.height = std::stoi(pnm_token(in));
        maxval = std::stoi(pnm_token(in));
    } catch (const std::exception&) {
        fail(path, "malformed header");
    }
    if (h.width <= 0 || h.height <= 0) fail(path, "non-positive dimensions");
    if (maxval != 255) fail(path, "only maxval 255 is supported");
    return h;
}

void read_exact(std::istream& in, std::uint8_t* dst, std::size_t n, const std::string& path) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) fail(path, "truncated pixel data");
}

TextureImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    const PnmHeader h = read_pnm_header(in, path, "P6");
    TextureImage img = TextureImage::create(h.width, h.height);
    read_exact(in, img.pixels.data(), img.pixels.size(), path);
    return img;
}

void write_ppm(const std::string& path, const TextureImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) fail(path, "write failed");
}

DepthMap read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    const PnmHeader h = read_pnm_header(in, path, "P5");
    DepthMap d = DepthMap::create(h.width, h.height);
    read_exact(in, d.samples.data(), d.samples.size(), path);
    return d;
}

void write_pgm(const std::string& path, const DepthMap& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << d.width << ' ' << d.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(d.samples.data()),
              static_cast<std::streamsize>(d.samples.size()));
    if (!out) fail(path, "write failed");
}

// --- PNG ----------------------------------------------------------------

struct PngCloser {
    std::FILE* fp = nullptr;
    ~PngCloser() {
        if (fp) std::fclose(fp);
    }
};

// Decodes any 8-bit-representable PNG to the requested channel count
// (3 = RGB, 1 = gray).
std::vector<std::uint8_t> read_png(const std::string& path, int channels, int& width,
                                   int& height) {
    PngCloser file{std::fopen(path.c_str(), "rb")};
    if (!file.fp) fail(path, "cannot open");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "libpng init failed");
    }
    std::vector<std::uint8_t> data;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "PNG decode error");
    }
    png_init_io(png, file.fp);
    png_read_info(png, info);

    png_set_expand(png);  // palettes, low bit depths, tRNS
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    png_set_strip_alpha(png);
    const png_byte color = png_get_color_type(png, info);
    if (channels == 3 && (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA))
        png_set_gray_to_rgb(png);
    if (channels == 1 && (color & PNG_COLOR_MASK_COLOR))
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    if (png_get_channels(png, info) != channels) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "unexpected channel layout after conversion");
    }
    data.assign(std::size_t(width) * height * channels, 0);
    rows.resize(height);
    for (int y = 0; y < height; ++y)
        rows[y] = data.data() + std::size_t(y) * width * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return data;
}

void write_png(const std::string& path, const std::uint8_t* data, int width, int height,
               int channels) {
    PngCloser file{std::fopen(path.c_str(), "wb")};
    if (!file.fp) fail(path, "cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        fail(path, "libpng init failed");
    }
    std::vector<png_bytep> rows(height);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "PNG encode error");
    }
    png_init_io(png, file.fp);
    png_set_IHDR(png, info, width, height, 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(data + std::size_t(y) * width * channels);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// --- YUV 4:2:0 ----------------------------------------------------------

std::uint8_t clamp255(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

std::vector<std::uint8_t> read_yuv_frame(const std::string& path, int width, int height,
                                         int frame_index) {
    if (width <= 0 || height <= 0 || width % 2 || height % 2)
        fail(path, "YUV 4:2:0 needs positive even dimensions");
    if (frame_index < 0) fail(path, "negative frame index");
    const long long frame = yuv420_frame_bytes(width, height);

    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    in.seekg(0, std::ios::end);
    const long long size = in.tellg();
    if (size % frame != 0) fail(path, "file size is not a whole number of frames");
    if ((frame_index + 1LL) * frame > size)
        fail(path, "frame " + std::to_string(frame_index) + " out of range (file holds " +
                       std::to_string(size / frame) + ")");
    in.seekg(frame_index * frame);
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(frame));
    read_exact(in, buf.data(), buf.size(), path);
    return buf;
}

}  // namespace

long long yuv420_frame_bytes(int width, int height) {
    return static_cast<long long>(width) * height * 3 / 2;
}

TextureImage read_texture(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "ppm") return read_ppm(path);
    if (ext == "png") {
        int w = 0, h = 0;
        TextureImage img;
        img.pixels = read_png(path, 3, w, h);
        img.width = w;
        img.height = h;
        return img;
    }
    fail(path, "unsupported texture format (expected .ppm or .png)");
}

void write_texture(const std::string& path, const TextureImage& img) {
    const std::string ext = lower_ext(path);
    if (ext == "ppm") return write_ppm(path, img);
    if (ext == "png") return write_png(path, img.pixels.data(), img.width, img.height, 3);
    fail(path, "unsupported texture format (expected .ppm or .png)");
}

DepthMap read_depth(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm") return read_pgm(path);
    if (ext == "png") {
        int w = 0, h = 0;
        DepthMap d;
        d.samples = read_png(path, 1, w, h);
        d.width = w;
        d.height = h;
        return d;
    }
    fail(path, "unsupported depth format (expected .pgm or .png)");
}

void write_depth(const std::string& path, const DepthMap& depth) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm") return write_pgm(path, depth);
    if (ext == "png")
        return write_png(path, depth.samples.data(), depth.width, depth.height, 1);
    fail(path, "unsupported depth format (expected .pgm or .png)");
}

TextureImage read_texture_yuv420(const std::string& path, int width, int height,
                                 int frame_index) {
    const std::vector<std::uint8_t> buf = read_yuv_frame(path, width, height, frame_index);
    const std::uint8_t* yp = buf.data();
    const std::uint8_t* up = yp + std::size_t(width) * height;
    const std::uint8_t* vp = up + std::size_t(width / 2) * (height / 2);

    TextureImage img = TextureImage::create(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double Y = yp[std::size_t(y) * width + x];
            const double U = up[std::size_t(y / 2) * (width / 2) + x / 2] - 128.0;
            const double V = vp[std::size_t(y / 2) * (width / 2) + x / 2] - 128.0;
            img.at(x, y, 0) = clamp255(Y + 1.402 * V);
            img.at(x, y, 1) = clamp255(Y - 0.344136 * U - 0.714136 * V);
            img.at(x, y, 2) = clamp255(Y + 1.772 * U);
        }
    }
    return img;
}

DepthMap read_depth_yuv420(const std::string& path, int width, int height, int frame_index) {
    const std::vector<std::uint8_t> buf = read_yuv_frame(path, width, height, frame_index);
    DepthMap d = DepthMap::create(width, height);
    std::copy_n(buf.data(), std::size_t(width) * height, d.samples.data());
    return d;
}

View read_view(const std::string& texture_path, const std::string& depth_path,
               const CameraParams& cam) {
    View v;
    v.texture = read_texture(texture_path);
    v.depth = read_depth(depth_path);
    v.camera = cam;
    validate(v);
    return v;
}

void write_view(const std::string& texture_path, const std::string& depth_path, const View& v) {
    write_texture(texture_path, v.texture);
    write_depth(depth_path, v.depth);
}

std::vector<CameraParams> read_rig(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    std::vector<CameraParams> rig;
    std::map<int, int> seen;  // view_id -> line
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        CameraParams cam;
        if (!(ls >> cam.view_id)) continue;  // blank line
        if (!(ls >> cam.baseline_pos >> cam.focal_length_px >> cam.z_near >> cam.z_far))
            fail(path, "line " + std::to_string(lineno) + ": expected 5 numeric fields");
        std::string extra;
        if (ls >> extra) fail(path, "line " + std::to_string(lineno) + ": trailing junk");
        try {
            validate(cam);
        } catch (const std::invalid_argument& e) {
            fail(path, "line " + std::to_string(lineno) + ": " + e.what());
        }
        if (const auto it = seen.find(cam.view_id); it != seen.end())
            fail(path, "line " + std::to_string(lineno) + ": duplicate view id " +
                           std::to_string(cam.view_id) + " (first on line " +
                           std::to_string(it->second) + ")");
        if (!rig.empty() && cam.focal_length_px != rig.front().focal_length_px)
            fail(path, "line " + std::to_string(lineno) +
                           ": focal length differs from the rest of the rig");
        seen[cam.view_id] = lineno;
        rig.push_back(cam);
    }
    if (rig.empty()) fail(path, "no cameras found");
    return rig;
}

void write_rig(const std::string& path, const std::vector<CameraParams>& rig) {
    std::ofstream out(path);
    if (!out) fail(path, "cannot open for writing");
    out << "# view_id baseline_pos focal_length_px z_near z_far\n";
    out.precision(17);
    for (const CameraParams& cam : rig)
        out << cam.view_id << ' ' << cam.baseline_pos << ' ' << cam.focal_length_px << ' '
            << cam.z_near << ' ' << cam.z_far << '\n';
    if (!out) fail(path, "write failed");
}

void write_hole_overlay(const WarpedView& view, const std::string& path) {
    TextureImage overlay = view.texture;
    for (int y = 0; y < view.height(); ++y) {
        for (int x = 0; x < view.width(); ++x) {
            if (!view.is_hole(x, y)) continue;
            overlay.at(x, y, 0) = 0;
            overlay.at(x, y, 1) = 255;
            overlay.at(x, y, 2) = 0;
        }
    }
    write_texture(path, overlay);
}

void write_mask(const std::string& path, const std::vector<std::uint8_t>& mask, int width,
                int height) {
    if (mask.size() != std::size_t(width) * height)
        throw std::invalid_argument("write_mask: mask size does not match dimensions");
    DepthMap as_gray = DepthMap::create(width, height);
    for (std::size_t i = 0; i < mask.size(); ++i) as_gray.samples[i] = mask[i] ? 255 : 0;
    write_depth(path, as_gray);
}

std::vector<std::uint8_t> read_mask(const std::string& path, int expect_width,
                                    int expect_height) {
    const DepthMap gray = read_depth(path);
    if (gray.width != expect_width || gray.height != expect_height)
        fail(path, "mask dimensions do not match the images");
    std::vector<std::uint8_t> mask(gray.samples.size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = gray.samples[i] ? 1 : 0;
    return mask;
}

}  // namespace dibr
