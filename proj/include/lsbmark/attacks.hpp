#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "lsbmark/image.hpp"

namespace lsbmark {

struct Rect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Clears the k lowest bits of every channel. k in [0, 8].
ArgbImage zero_lsb(const ArgbImage& image, int k);

/// Region destruction with preserved geometry: pixels inside `keep` survive,
/// everything else becomes `fill`.
ArgbImage crop(const ArgbImage& image, Rect keep, Argb fill);

/// Complement of crop: pixels inside `region` become `fill`.
ArgbImage erase_region(const ArgbImage& image, Rect region, Argb fill);

/// Adds an integer drawn uniformly from [-amplitude, amplitude] to every
/// channel, clamped to [0, 255]. Draws come from the splitmix64 stream
/// started at `seed`, consumed row-major and a, r, g, b within a pixel.
ArgbImage add_noise(const ArgbImage& image, int amplitude, std::uint64_t seed);

struct NoAttack {
  friend bool operator==(const NoAttack&, const NoAttack&) = default;
};
struct ZeroLsbAttack {
  int k = 1;
  friend bool operator==(const ZeroLsbAttack&, const ZeroLsbAttack&) = default;
};
struct CropAttack {
  Rect keep;
  Argb fill;
  friend bool operator==(const CropAttack&, const CropAttack&) = default;
};
struct EraseAttack {
  Rect region;
  Argb fill;
  friend bool operator==(const EraseAttack&, const EraseAttack&) = default;
};
struct NoiseAttack {
  int amplitude = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const NoiseAttack&, const NoiseAttack&) = default;
};

using AttackSpec =
    std::variant<NoAttack, ZeroLsbAttack, CropAttack, EraseAttack, NoiseAttack>;

/// Grammar:
///   none
///   zero-lsb:k=1
///   crop:x=0,y=0,w=64,h=64,fill=0
///   erase:x=32,y=32,w=64,h=64,fill=0
///   noise:amp=4,seed=7
/// `fill` is either one decimal value for all four channels or 0xAARRGGBB.
/// Errors name the offending token.
AttackSpec parse_attack(std::string_view text);
std::string to_string(const AttackSpec& spec);

ArgbImage apply_attack(const ArgbImage& image, const AttackSpec& spec);

}  // namespace lsbmark
