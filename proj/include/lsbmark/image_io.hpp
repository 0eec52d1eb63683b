#pragma once

#include <filesystem>

#include "lsbmark/image.hpp"

namespace lsbmark {

// Host images are PNG (8-bit RGB or RGBA). RGB input is promoted to opaque
// alpha. Output is always 8-bit RGBA PNG.
ArgbImage load_argb(const std::filesystem::path& path);
void save_argb(const ArgbImage& image, const std::filesystem::path& path);

// Watermarks are binary PGM (P5, maxval 255) or 8-bit grayscale PNG. The
// reader sniffs the content; the writer picks PNG for a ".png" extension and
// PGM otherwise.
GrayImage load_gray(const std::filesystem::path& path);
void save_gray(const GrayImage& image, const std::filesystem::path& path);

}  // namespace lsbmark
