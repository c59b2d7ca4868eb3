#pragma once

#include <filesystem>

#include "glyphrec/raster.hpp"

namespace glyphrec {

// Reads an 8-bit grayscale PNG (other PNG color types are converted to
// gray) or a binary PGM (P5, maxval <= 255). Throws DataError on failure.
ByteImage read_gray_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ByteImage& img);
void write_pgm(const std::filesystem::path& path, const ByteImage& img);

// Debug dumps. Gray rasters are rescaled affinely to 0..255; binary rasters
// are written as {0, 255} with foreground black.
void dump_pgm(const std::filesystem::path& path, const GrayImage& img);
void dump_binary_pgm(const std::filesystem::path& path, const BinaryImage& img);

}  // namespace glyphrec
