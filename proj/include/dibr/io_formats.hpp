#pragma once

#include <string>
#include <vector>

#include "dibr/core_types.hpp"

namespace dibr {

// Texture readers/writers dispatch on extension: .ppm (binary P6) and .png.
// Depth uses .pgm (binary P5) and 8-bit grayscale .png. Malformed files
// throw std::runtime_error; nothing is silently truncated.
TextureImage read_texture(const std::string& path);
void write_texture(const std::string& path, const TextureImage& img);

DepthMap read_depth(const std::string& path);
void write_depth(const std::string& path, const DepthMap& depth);

// Planar 8-bit YUV 4:2:0 raw frames; dimensions must be even and the frame
// index inside the file (size w*h*3/2 per frame). Color converts to RGB via
// BT.601 full range; the depth variant takes the Y plane as the sample grid.
TextureImage read_texture_yuv420(const std::string& path, int width, int height, int frame_index);
DepthMap read_depth_yuv420(const std::string& path, int width, int height, int frame_index);

// Byte size of one frame, exposed for size arithmetic and validation.
long long yuv420_frame_bytes(int width, int height);

View read_view(const std::string& texture_path, const std::string& depth_path,
               const CameraParams& cam);
void write_view(const std::string& texture_path, const std::string& depth_path, const View& v);

// Rig file: one camera per line, "view_id baseline_pos focal_length_px
// z_near z_far", '#' starts a comment. All cameras must share the focal
// length; duplicate ids and non-numeric fields are errors.
std::vector<CameraParams> read_rig(const std::string& path);
void write_rig(const std::string& path, const std::vector<CameraParams>& rig);

// PNG with every hole pixel pure green (0,255,0) and everything else taken
// from the warped texture.
void write_hole_overlay(const WarpedView& view, const std::string& path);

// Binary masks ride on PGM/PNG grayscale: nonzero = set. Sizes must match
// width*height.
void write_mask(const std::string& path, const std::vector<std::uint8_t>& mask, int width,
                int height);
std::vector<std::uint8_t> read_mask(const std::string& path, int expect_width, int expect_height);

}  // namespace dibr
