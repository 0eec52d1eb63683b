#include "lsbmark/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

namespace lsbmark {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(Errc::file_not_found, "file not found: " + path.string());
  }
  if (fs::is_directory(path, ec)) {
    throw Error(Errc::io_failure, "is a directory: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_failure, "cannot open for reading: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(Errc::io_failure, "read failed: " + path.string());
  }
  return bytes;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_failure, "cannot open for writing: " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw Error(Errc::io_failure, "write failed: " + path.string());
  }
}

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 &&
         png_sig_cmp(const_cast<png_bytep>(bytes.data()), 0, 8) == 0;
}

bool is_pgm(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5';
}

std::string describe_format(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 &&
      bytes[2] == 0xFF) {
    return "JPEG (lossy formats are not accepted)";
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' &&
      bytes[1] <= '7') {
    return std::string("netpbm P") + static_cast<char>(bytes[1]);
  }
  return "unrecognized content";
}

// ---------------------------------------------------------------- PNG --

struct PngContext {
  std::span<const std::uint8_t> input;
  std::size_t offset = 0;
  std::vector<std::uint8_t>* output = nullptr;
  char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp msg) {
  auto* ctx = static_cast<PngContext*>(png_get_error_ptr(png));
  std::snprintf(ctx->message, sizeof(ctx->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

void png_read_memory(png_structp png, png_bytep out, png_size_t length) {
  auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
  if (length > ctx->input.size() - ctx->offset) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, ctx->input.data() + ctx->offset, length);
  ctx->offset += length;
}

void png_write_memory(png_structp png, png_bytep data, png_size_t length) {
  auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
  ctx->output->insert(ctx->output->end(), data, data + length);
}

void png_flush_memory(png_structp) {}

struct DecodedPng {
  std::size_t width = 0;
  std::size_t height = 0;
  int color_type = 0;
  int bit_depth = 0;
  std::size_t channels = 0;
  std::vector<std::uint8_t> samples;  // row-major, `channels` per pixel
};

enum class PngStatus { ok, corrupt, unsupported };

// Keeps libpng's longjmp confined to a frame whose automatic objects are all
// declared before setjmp.
PngStatus decode_png(std::span<const std::uint8_t> bytes,
                     bool (*accept)(int color_type, int bit_depth),
                     DecodedPng& out, PngContext& ctx) {
  ctx.input = bytes;
  ctx.offset = 0;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx,
                                           png_error_handler,
                                           png_warning_handler);
  if (png == nullptr) return PngStatus::corrupt;
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows;
  volatile PngStatus status = PngStatus::ok;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return status == PngStatus::unsupported ? PngStatus::unsupported
                                            : PngStatus::corrupt;
  }
  if (info == nullptr) png_error(png, "out of memory");

  png_set_read_fn(png, &ctx, png_read_memory);
  png_read_info(png, info);
  out.width = png_get_image_width(png, info);
  out.height = png_get_image_height(png, info);
  out.color_type = png_get_color_type(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  if (!accept(out.color_type, out.bit_depth)) {
    status = PngStatus::unsupported;
    png_error(png, "unsupported PNG layout");
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  out.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.samples.assign(stride * out.height, 0);
  rows.resize(out.height);
  for (std::size_t y = 0; y < out.height; ++y) {
    rows[y] = out.samples.data() + y * stride;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return PngStatus::ok;
}

bool encode_png(std::span<const std::uint8_t> samples, std::size_t width,
                std::size_t height, int color_type, std::size_t channels,
                std::vector<std::uint8_t>& out, PngContext& ctx) {
  ctx.output = &out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx,
                                            png_error_handler,
                                            png_warning_handler);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(height);

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  if (info == nullptr) png_error(png, "out of memory");

  png_set_write_fn(png, &ctx, png_write_memory, png_flush_memory);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = width * channels;
  for (std::size_t y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(samples.data() + y * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void check_png_status(PngStatus status, const PngContext& ctx,
                      const fs::path& path, const char* expected) {
  if (status == PngStatus::unsupported) {
    throw Error(Errc::unsupported_format,
                path.string() + ": expected " + expected);
  }
  if (status == PngStatus::corrupt) {
    throw Error(Errc::corrupt_data,
                path.string() + ": corrupt PNG (" + ctx.message + ")");
  }
}

// ---------------------------------------------------------------- PGM --

GrayImage decode_pgm(std::span<const std::uint8_t> bytes,
                     const fs::path& path) {
  std::size_t pos = 2;
  auto corrupt = [&](const std::string& what) {
    return Error(Errc::corrupt_data, path.string() + ": corrupt PGM (" + what + ")");
  };
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_number = [&]() -> std::size_t {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw corrupt("bad header");
    }
    std::size_t value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > (1u << 30)) throw corrupt("dimension overflow");
      ++pos;
    }
    return value;
  };

  const std::size_t width = read_number();
  const std::size_t height = read_number();
  const std::size_t maxval = read_number();
  if (maxval != 255) {
    throw Error(Errc::unsupported_format,
                path.string() + ": PGM maxval " + std::to_string(maxval) +
                    " (only 255 is supported)");
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw corrupt("missing raster separator");
  }
  ++pos;
  if (width == 0 || height == 0) throw corrupt("zero dimension");
  const std::size_t count = width * height;
  if (bytes.size() - pos < count) throw corrupt("truncated raster");
  std::vector<std::uint8_t> pixels(bytes.begin() + pos,
                                   bytes.begin() + pos + count);
  return GrayImage(width, height, std::move(pixels));
}

}  // namespace

ArgbImage load_argb(const fs::path& path) {
  const auto bytes = read_file(path);
  if (bytes.empty()) {
    throw Error(Errc::corrupt_data, path.string() + ": empty file");
  }
  if (!is_png(bytes)) {
    throw Error(Errc::unsupported_format,
                path.string() + ": not a PNG file (" + describe_format(bytes) + ")");
  }
  DecodedPng png;
  PngContext ctx;
  const auto status = decode_png(
      bytes,
      [](int color_type, int bit_depth) {
        return bit_depth == 8 && (color_type == PNG_COLOR_TYPE_RGB ||
                                  color_type == PNG_COLOR_TYPE_RGB_ALPHA);
      },
      png, ctx);
  check_png_status(status, ctx, path, "8-bit RGB or RGBA PNG");

  std::vector<Argb> pixels(png.width * png.height);
  const bool has_alpha = png.channels == 4;
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const std::uint8_t* s = png.samples.data() + i * png.channels;
    pixels[i] = Argb{has_alpha ? s[3] : std::uint8_t{255}, s[0], s[1], s[2]};
  }
  return ArgbImage(png.width, png.height, std::move(pixels));
}

void save_argb(const ArgbImage& image, const fs::path& path) {
  std::vector<std::uint8_t> samples;
  samples.reserve(image.size() * 4);
  for (const Argb& p : image.pixels()) {
    samples.insert(samples.end(), {p.r, p.g, p.b, p.a});
  }
  std::vector<std::uint8_t> encoded;
  PngContext ctx;
  if (!encode_png(samples, image.width(), image.height(),
                  PNG_COLOR_TYPE_RGB_ALPHA, 4, encoded, ctx)) {
    throw Error(Errc::io_failure,
                path.string() + ": PNG encoding failed (" + ctx.message + ")");
  }
  write_file(path, encoded);
}

GrayImage load_gray(const fs::path& path) {
  const auto bytes = read_file(path);
  if (bytes.empty()) {
    throw Error(Errc::corrupt_data, path.string() + ": empty file");
  }
  if (is_pgm(bytes)) return decode_pgm(bytes, path);
  if (!is_png(bytes)) {
    throw Error(Errc::unsupported_format,
                path.string() + ": expected PGM (P5) or grayscale PNG, got " +
                    describe_format(bytes));
  }
  DecodedPng png;
  PngContext ctx;
  const auto status = decode_png(
      bytes,
      [](int color_type, int bit_depth) {
        return bit_depth == 8 && color_type == PNG_COLOR_TYPE_GRAY;
      },
      png, ctx);
  check_png_status(status, ctx, path, "8-bit grayscale PNG");
  return GrayImage(png.width, png.height, std::move(png.samples));
}

void save_gray(const GrayImage& image, const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::vector<std::uint8_t> encoded;
  if (ext == ".png") {
    PngContext ctx;
    if (!encode_png(image.pixels(), image.width(), image.height(),
                    PNG_COLOR_TYPE_GRAY, 1, encoded, ctx)) {
      throw Error(Errc::io_failure,
                  path.string() + ": PNG encoding failed (" + ctx.message + ")");
    }
  } else {
    const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                               std::to_string(image.height()) + "\n255\n";
    encoded.assign(header.begin(), header.end());
    encoded.insert(encoded.end(), image.pixels().begin(), image.pixels().end());
  }
  write_file(path, encoded);
}

}  // namespace lsbmark
