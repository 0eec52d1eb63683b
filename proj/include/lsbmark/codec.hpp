#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lsbmark/image.hpp"
#include "lsbmark/keystream.hpp"

namespace lsbmark {

enum class Method { Classic, Modified };

std::string_view to_string(Method method) noexcept;
/// Accepts "classic" or "modified"; throws parse_error otherwise.
Method parse_method(std::string_view text);

inline constexpr std::uint16_t kMagic = 0x574D;  // "WM"
inline constexpr std::size_t kHeaderBytes = 8;
inline constexpr std::size_t kHeaderBits = kHeaderBytes * 8;

/// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> bytes) noexcept;

/// Framing written ahead of the watermark pixels. Serialized big-endian as
/// magic, width, height, checksum.
struct PayloadHeader {
  std::uint16_t magic = kMagic;
  std::uint16_t wm_width = 0;
  std::uint16_t wm_height = 0;
  std::uint16_t checksum = 0;

  std::array<std::uint8_t, kHeaderBytes> to_bytes() const noexcept;
  static PayloadHeader from_bytes(std::span<const std::uint8_t> bytes);

  friend bool operator==(const PayloadHeader&, const PayloadHeader&) = default;
};

/// Puts watermark bit pairs (7,6) (5,4) (3,2) (1,0) into the two low bits of
/// alpha, red, green, blue. The higher bit of each pair lands at channel bit 1.
constexpr Argb encode_byte_into_pixel(Argb pixel, std::uint8_t w) noexcept {
  Argb out = pixel;
  for (std::size_t i = 0; i < kChannelOrder.size(); ++i) {
    const auto shift = static_cast<unsigned>(6 - 2 * i);
    std::uint8_t& c = out[kChannelOrder[i]];
    c = static_cast<std::uint8_t>((c & 0xFC) | ((w >> shift) & 0x03));
  }
  return out;
}

constexpr std::uint8_t decode_byte_from_pixel(Argb pixel) noexcept {
  return static_cast<std::uint8_t>((pixel.a & 3) << 6 | (pixel.r & 3) << 4 |
                                   (pixel.g & 3) << 2 | (pixel.b & 3));
}

/// Payload bits available after the 64-bit header: 8n - 64 (Modified) or
/// 3n - 64 (Classic), floored at zero.
std::uint64_t capacity_bits(std::size_t pixel_count, Method method) noexcept;
std::uint64_t capacity(const ArgbImage& host, Method method) noexcept;

/// Largest watermark, in 8-bit pixels, that fits the host.
std::size_t max_watermark_pixels(std::size_t pixel_count, Method method) noexcept;

/// Host pixels touched when `stream_bytes` bytes (header included) are written.
std::size_t plan_pixels_for(std::size_t stream_bytes, Method method) noexcept;

/// Low-level stream access: writes / reads the first bytes of the embedded
/// byte stream (header followed by watermark pixels) along the keyed plan.
ArgbImage write_stream(const ArgbImage& host, const SecretKey& key,
                       Method method, std::span<const std::uint8_t> stream);
std::vector<std::uint8_t> read_stream(const ArgbImage& image,
                                      const SecretKey& key, Method method,
                                      std::size_t byte_count);

/// Embeds `watermark` into `host`. Pixels outside the keyed plan are left
/// bit-identical. Throws watermark_too_large or empty_watermark.
ArgbImage embed(const ArgbImage& host, const GrayImage& watermark,
                const SecretKey& key, Method method);

struct Dimensions {
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t area() const noexcept { return width * height; }
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

struct ExtractionResult {
  GrayImage watermark;
  PayloadHeader header;  // as read, possibly damaged
  bool header_valid = false;
  bool checksum_valid = false;
};

/// Blind extraction. Reads the header along the keyed plan and decodes the
/// payload it describes. A checksum failure still returns the decoded bytes.
///
/// Without `dimensions`, a magic mismatch throws no_watermark_found and an
/// impossible size throws header_exceeds_capacity. Passing `dimensions`
/// skips the size fields of the header so that attacked images whose header
/// is unreadable can still be decoded; header_valid then only reports the
/// magic.
ExtractionResult extract(const ArgbImage& image, const SecretKey& key,
                         Method method,
                         std::optional<Dimensions> dimensions = std::nullopt);

/// Decodes `dimensions` worth of payload without consulting the header.
/// Throws reference_too_large when it cannot fit.
GrayImage decode_payload(const ArgbImage& image, const SecretKey& key,
                         Method method, Dimensions dimensions);

inline constexpr double kDefaultDetectionThreshold = 0.5;

struct Detection {
  double score = 0.0;
  bool detected = false;
};

/// Non-blind presence test: decodes a payload of the reference's size and
/// correlates it with the reference. A constant decode (e.g. all low bits
/// cleared) scores 0. A constant reference throws zero_variance.
Detection detect(const ArgbImage& image, const SecretKey& key,
                 const GrayImage& reference, Method method,
                 double threshold = kDefaultDetectionThreshold);

}  // namespace lsbmark
