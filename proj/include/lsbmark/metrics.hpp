#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lsbmark/image.hpp"

namespace lsbmark {

/// PSNR of identical inputs.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();
inline constexpr double kPsnrPeak = 255.0;

// Mean squared error over every sample: four per ARGB pixel (alpha included,
// since the modified method writes there), one per gray pixel.
double mse(const ArgbImage& a, const ArgbImage& b);
double mse(const GrayImage& a, const GrayImage& b);

double psnr_from_mse(double mse) noexcept;
double psnr(const ArgbImage& a, const ArgbImage& b);
double psnr(const GrayImage& a, const GrayImage& b);

/// Fraction of differing bits. Each element is a single bit (0 or 1).
double ber(std::span<const std::uint8_t> a_bits, std::span<const std::uint8_t> b_bits);

/// Bit error rate over the packed bits of two byte sequences.
double byte_ber(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// MSB-first expansion of bytes into one element per bit.
std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes);

bool is_constant(std::span<const std::uint8_t> samples) noexcept;

/// Pearson correlation. Throws zero_variance if either side is constant.
double normalized_correlation(std::span<const double> a, std::span<const double> b);
double normalized_correlation(std::span<const std::uint8_t> a,
                              std::span<const std::uint8_t> b);
double normalized_correlation(const GrayImage& a, const GrayImage& b);

struct QualityReport {
  double mse = 0.0;
  double psnr = kInfinitePsnr;
  double ber = 0.0;
  double nc = 1.0;
};

/// Host fidelity (mse/psnr of `candidate` against `original`) together with
/// payload fidelity (ber/nc of `recovered` against `reference`). A constant
/// recovery carries no correlation and reports nc = 0.
QualityReport assess(const ArgbImage& original, const ArgbImage& candidate,
                     const GrayImage& reference, const GrayImage& recovered);

}  // namespace lsbmark
