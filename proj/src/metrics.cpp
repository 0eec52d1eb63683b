#include "lsbmark/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "lsbmark/error.hpp"

namespace lsbmark {
namespace {

template <class Image>
void require_same_shape(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(Errc::dimension_mismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                    " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

double sq(int d) { return static_cast<double>(d) * d; }

}  // namespace

double mse(const ArgbImage& a, const ArgbImage& b) {
  require_same_shape(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Argb& p = a[i];
    const Argb& q = b[i];
    sum += sq(p.a - q.a) + sq(p.r - q.r) + sq(p.g - q.g) + sq(p.b - q.b);
  }
  return sum / (4.0 * static_cast<double>(a.size()));
}

double mse(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += sq(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

double psnr_from_mse(double value) noexcept {
  if (value <= 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(kPsnrPeak * kPsnrPeak / value);
}

double psnr(const ArgbImage& a, const ArgbImage& b) { return psnr_from_mse(mse(a, b)); }
double psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

double ber(std::span<const std::uint8_t> a_bits, std::span<const std::uint8_t> b_bits) {
  if (a_bits.size() != b_bits.size()) {
    throw Error(Errc::length_mismatch, "bit sequences differ in length: " +
                                           std::to_string(a_bits.size()) + " vs " +
                                           std::to_string(b_bits.size()));
  }
  if (a_bits.empty()) throw Error(Errc::empty_input, "bit sequences are empty");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < a_bits.size(); ++i) {
    if (a_bits[i] > 1 || b_bits[i] > 1) {
      throw Error(Errc::invalid_argument, "bit sequence element is not 0 or 1");
    }
    errors += a_bits[i] != b_bits[i];
  }
  return static_cast<double>(errors) / static_cast<double>(a_bits.size());
}

double byte_ber(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::length_mismatch, "byte sequences differ in length");
  }
  if (a.empty()) throw Error(Errc::empty_input, "byte sequences are empty");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    errors += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
  }
  return static_cast<double>(errors) / (8.0 * static_cast<double>(a.size()));
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes) {
    for (int shift = 7; shift >= 0; --shift) bits.push_back((byte >> shift) & 1);
  }
  return bits;
}

bool is_constant(std::span<const std::uint8_t> samples) noexcept {
  return std::adjacent_find(samples.begin(), samples.end(),
                            std::not_equal_to<>()) == samples.end();
}

double normalized_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::dimension_mismatch, "sequences differ in length");
  }
  if (a.empty()) throw Error(Errc::empty_input, "sequences are empty");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw Error(Errc::zero_variance, "correlation undefined for a constant input");
  }
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

double normalized_correlation(std::span<const std::uint8_t> a,
                              std::span<const std::uint8_t> b) {
  const std::vector<double> da(a.begin(), a.end());
  const std::vector<double> db(b.begin(), b.end());
  return normalized_correlation(std::span<const double>(da), std::span<const double>(db));
}

double normalized_correlation(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  return normalized_correlation(a.pixels(), b.pixels());
}

QualityReport assess(const ArgbImage& original, const ArgbImage& candidate,
                     const GrayImage& reference, const GrayImage& recovered) {
  QualityReport report;
  report.mse = mse(original, candidate);
  report.psnr = psnr_from_mse(report.mse);
  require_same_shape(reference, recovered);
  report.ber = byte_ber(reference.pixels(), recovered.pixels());
  report.nc = is_constant(recovered.pixels())
                  ? 0.0
                  : normalized_correlation(reference, recovered);
  return report;
}

}  // namespace lsbmark
