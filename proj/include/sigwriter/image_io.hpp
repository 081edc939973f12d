#pragma once

#include <sigwriter/imageproc.hpp>

#include <filesystem>

namespace sigwriter {

/// Loads PNG, PGM (P2/P5) or PPM (P3/P6). Color is reduced to luminance.
/// Throws IoError.
GrayImage read_image(const std::filesystem::path& path);

/// Writes a binary PGM (P5).
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

/// Writes an 8-bit grayscale PNG.
void write_png(const std::filesystem::path& path, const GrayImage& img);

}  // namespace sigwriter
