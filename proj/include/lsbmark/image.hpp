#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsbmark/error.hpp"

namespace lsbmark {

/// Channels of a host pixel, in the order the modified method fills them.
enum class Channel : std::uint8_t { Alpha = 0, Red = 1, Green = 2, Blue = 3 };

inline constexpr std::array<Channel, 4> kChannelOrder = {
    Channel::Alpha, Channel::Red, Channel::Green, Channel::Blue};

struct Argb {
  std::uint8_t a = 0;
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  constexpr std::uint8_t operator[](Channel c) const noexcept {
    switch (c) {
      case Channel::Alpha: return a;
      case Channel::Red: return r;
      case Channel::Green: return g;
      case Channel::Blue: return b;
    }
    return 0;
  }

  constexpr std::uint8_t& operator[](Channel c) noexcept {
    switch (c) {
      case Channel::Alpha: return a;
      case Channel::Red: return r;
      case Channel::Green: return g;
      default: return b;
    }
  }

  friend constexpr bool operator==(const Argb&, const Argb&) = default;
};

/// Immutable row-major raster. Index of (x, y) is y * width + x everywhere
/// in the library, including keyed selection and region attacks.
template <class Pixel>
class Raster {
 public:
  using pixel_type = Pixel;

  Raster(std::size_t width, std::size_t height, std::vector<Pixel> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width_ == 0 || height_ == 0) {
      throw Error(Errc::invalid_image, "image dimensions must be at least 1x1");
    }
    if (pixels_.size() != width_ * height_) {
      throw Error(Errc::invalid_image,
                  "pixel count " + std::to_string(pixels_.size()) +
                      " does not match " + std::to_string(width_) + "x" +
                      std::to_string(height_));
    }
  }

  /// Uniformly filled image.
  Raster(std::size_t width, std::size_t height, Pixel fill)
      : Raster(width, height, std::vector<Pixel>(width * height, fill)) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::span<const Pixel> pixels() const noexcept { return pixels_; }
  const Pixel& operator[](std::size_t index) const { return pixels_[index]; }
  const Pixel& at(std::size_t x, std::size_t y) const {
    return pixels_.at(y * width_ + x);
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Pixel> pixels_;
};

using GrayImage = Raster<std::uint8_t>;
using ArgbImage = Raster<Argb>;

}  // namespace lsbmark
