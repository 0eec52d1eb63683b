#include "lsbmark/codec.hpp"

#include <string>

#include "lsbmark/error.hpp"
#include "lsbmark/metrics.hpp"

namespace lsbmark {
namespace {

constexpr std::size_t kClassicBitsPerPixel = 3;
constexpr std::array<Channel, 3> kClassicChannels = {Channel::Red, Channel::Green,
                                                     Channel::Blue};

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void require_fits(std::size_t watermark_pixels, std::size_t host_pixels,
                  Method method, Errc code, const char* what) {
  const std::size_t limit = max_watermark_pixels(host_pixels, method);
  if (watermark_pixels > limit) {
    throw Error(code, std::string(what) + " needs " +
                          std::to_string(watermark_pixels * 8) +
                          " payload bits but the host holds " +
                          std::to_string(capacity_bits(host_pixels, method)) +
                          " (" + std::to_string(limit) + " pixels, " +
                          std::string(to_string(method)) + ")");
  }
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  return method == Method::Classic ? "classic" : "modified";
}

Method parse_method(std::string_view text) {
  if (text == "classic") return Method::Classic;
  if (text == "modified") return Method::Modified;
  throw Error(Errc::parse_error,
              "unknown method '" + std::string(text) + "' (classic|modified)");
}

std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> bytes) noexcept {
  std::uint16_t crc = 0xFFFF;
  for (std::uint8_t byte : bytes) {
    crc ^= static_cast<std::uint16_t>(byte << 8);
    for (int bit = 0; bit < 8; ++bit) {
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                           : static_cast<std::uint16_t>(crc << 1);
    }
  }
  return crc;
}

std::array<std::uint8_t, kHeaderBytes> PayloadHeader::to_bytes() const noexcept {
  auto hi = [](std::uint16_t v) { return static_cast<std::uint8_t>(v >> 8); };
  auto lo = [](std::uint16_t v) { return static_cast<std::uint8_t>(v & 0xFF); };
  return {hi(magic),     lo(magic),     hi(wm_width), lo(wm_width),
          hi(wm_height), lo(wm_height), hi(checksum), lo(checksum)};
}

PayloadHeader PayloadHeader::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) {
    throw Error(Errc::length_mismatch, "payload header needs 8 bytes");
  }
  auto word = [&](std::size_t i) {
    return static_cast<std::uint16_t>(bytes[i] << 8 | bytes[i + 1]);
  };
  return PayloadHeader{word(0), word(2), word(4), word(6)};
}

std::uint64_t capacity_bits(std::size_t pixel_count, Method method) noexcept {
  const std::uint64_t per_pixel = method == Method::Modified ? 8 : kClassicBitsPerPixel;
  const std::uint64_t raw = per_pixel * pixel_count;
  return raw > kHeaderBits ? raw - kHeaderBits : 0;
}

std::uint64_t capacity(const ArgbImage& host, Method method) noexcept {
  return capacity_bits(host.size(), method);
}

std::size_t max_watermark_pixels(std::size_t pixel_count, Method method) noexcept {
  return static_cast<std::size_t>(capacity_bits(pixel_count, method) / 8);
}

std::size_t plan_pixels_for(std::size_t stream_bytes, Method method) noexcept {
  if (method == Method::Modified) return stream_bytes;
  return ceil_div(stream_bytes * 8, kClassicBitsPerPixel);
}

ArgbImage write_stream(const ArgbImage& host, const SecretKey& key,
                       Method method, std::span<const std::uint8_t> stream) {
  const auto plan =
      derive_permutation(key, host.size(), plan_pixels_for(stream.size(), method));
  std::vector<Argb> pixels(host.pixels().begin(), host.pixels().end());

  if (method == Method::Modified) {
    for (std::size_t i = 0; i < stream.size(); ++i) {
      Argb& p = pixels[plan[i]];
      p = encode_byte_into_pixel(p, stream[i]);
    }
  } else {
    const std::size_t bit_count = stream.size() * 8;
    for (std::size_t slot = 0; slot < bit_count; ++slot) {
      const auto bit =
          static_cast<std::uint8_t>((stream[slot / 8] >> (7 - slot % 8)) & 1);
      std::uint8_t& c = pixels[plan[slot / kClassicBitsPerPixel]]
                              [kClassicChannels[slot % kClassicBitsPerPixel]];
      c = static_cast<std::uint8_t>((c & 0xFE) | bit);
    }
  }
  return ArgbImage(host.width(), host.height(), std::move(pixels));
}

std::vector<std::uint8_t> read_stream(const ArgbImage& image,
                                      const SecretKey& key, Method method,
                                      std::size_t byte_count) {
  const auto plan =
      derive_permutation(key, image.size(), plan_pixels_for(byte_count, method));
  std::vector<std::uint8_t> out(byte_count, 0);

  if (method == Method::Modified) {
    for (std::size_t i = 0; i < byte_count; ++i) {
      out[i] = decode_byte_from_pixel(image[plan[i]]);
    }
  } else {
    const std::size_t bit_count = byte_count * 8;
    for (std::size_t slot = 0; slot < bit_count; ++slot) {
      const Argb& p = image[plan[slot / kClassicBitsPerPixel]];
      const auto bit = p[kClassicChannels[slot % kClassicBitsPerPixel]] & 1;
      out[slot / 8] = static_cast<std::uint8_t>(out[slot / 8] | bit << (7 - slot % 8));
    }
  }
  return out;
}

ArgbImage embed(const ArgbImage& host, const GrayImage& watermark,
                const SecretKey& key, Method method) {
  if (watermark.size() == 0) {
    throw Error(Errc::empty_watermark, "watermark has no pixels");
  }
  if (watermark.width() > 0xFFFF || watermark.height() > 0xFFFF) {
    throw Error(Errc::watermark_too_large,
                "watermark dimensions must fit in 16 bits each");
  }
  require_fits(watermark.size(), host.size(), method, Errc::watermark_too_large,
               "watermark");

  const auto payload = watermark.pixels();
  const PayloadHeader header{kMagic, static_cast<std::uint16_t>(watermark.width()),
                             static_cast<std::uint16_t>(watermark.height()),
                             crc16_ccitt_false(payload)};
  std::vector<std::uint8_t> stream;
  stream.reserve(kHeaderBytes + payload.size());
  const auto header_bytes = header.to_bytes();
  stream.insert(stream.end(), header_bytes.begin(), header_bytes.end());
  stream.insert(stream.end(), payload.begin(), payload.end());
  return write_stream(host, key, method, stream);
}

GrayImage decode_payload(const ArgbImage& image, const SecretKey& key,
                         Method method, Dimensions dimensions) {
  if (dimensions.area() == 0) {
    throw Error(Errc::empty_watermark, "payload dimensions must be at least 1x1");
  }
  require_fits(dimensions.area(), image.size(), method, Errc::reference_too_large,
               "reference");
  auto stream = read_stream(image, key, method, kHeaderBytes + dimensions.area());
  stream.erase(stream.begin(), stream.begin() + kHeaderBytes);
  return GrayImage(dimensions.width, dimensions.height, std::move(stream));
}

ExtractionResult extract(const ArgbImage& image, const SecretKey& key,
                         Method method, std::optional<Dimensions> dimensions) {
  if (image.size() < plan_pixels_for(kHeaderBytes, method)) {
    throw Error(Errc::no_watermark_found, "image too small to hold a header");
  }
  const auto header =
      PayloadHeader::from_bytes(read_stream(image, key, method, kHeaderBytes));
  const bool magic_ok = header.magic == kMagic;

  Dimensions dims;
  if (dimensions) {
    dims = *dimensions;
  } else {
    if (!magic_ok) {
      throw Error(Errc::no_watermark_found,
                  "no watermark found (magic mismatch: wrong key, wrong method, "
                  "or unwatermarked image)");
    }
    dims = {header.wm_width, header.wm_height};
    if (dims.area() == 0 ||
        dims.area() > max_watermark_pixels(image.size(), method)) {
      throw Error(Errc::header_exceeds_capacity,
                  "header declares a " + std::to_string(dims.width) + "x" +
                      std::to_string(dims.height) +
                      " watermark, which this image cannot hold");
    }
  }

  GrayImage watermark = decode_payload(image, key, method, dims);
  const bool checksum_ok =
      magic_ok && header.checksum == crc16_ccitt_false(watermark.pixels());
  return ExtractionResult{std::move(watermark), header, magic_ok, checksum_ok};
}

Detection detect(const ArgbImage& image, const SecretKey& key,
                 const GrayImage& reference, Method method, double threshold) {
  if (is_constant(reference.pixels())) {
    throw Error(Errc::zero_variance,
                "reference watermark is constant and cannot be correlated");
  }
  const GrayImage decoded = decode_payload(
      image, key, method, Dimensions{reference.width(), reference.height()});
  const double score = is_constant(decoded.pixels())
                           ? 0.0
                           : normalized_correlation(decoded, reference);
  return Detection{score, score >= threshold};
}

}  // namespace lsbmark
