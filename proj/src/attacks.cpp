#include "lsbmark/attacks.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <vector>

#include "lsbmark/error.hpp"
#include "lsbmark/keystream.hpp"

namespace lsbmark {
namespace {

void require_inside(const ArgbImage& image, Rect r) {
  if (r.x > image.width() || r.y > image.height() ||
      r.width > image.width() - r.x || r.height > image.height() - r.y) {
    throw Error(Errc::rectangle_out_of_bounds,
                "rectangle x=" + std::to_string(r.x) + ",y=" + std::to_string(r.y) +
                    ",w=" + std::to_string(r.width) + ",h=" + std::to_string(r.height) +
                    " exceeds " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()));
  }
}

bool contains(Rect r, std::size_t x, std::size_t y) {
  return x >= r.x && x < r.x + r.width && y >= r.y && y < r.y + r.height;
}

template <class Keep>
ArgbImage fill_where(const ArgbImage& image, Argb fill, Keep keep) {
  std::vector<Argb> pixels(image.pixels().begin(), image.pixels().end());
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::size_t x = 0; x < image.width(); ++x) {
      if (!keep(x, y)) pixels[y * image.width() + x] = fill;
    }
  }
  return ArgbImage(image.width(), image.height(), std::move(pixels));
}

// ------------------------------------------------------------- parsing --

std::uint64_t parse_uint(std::string_view token, std::string_view value) {
  std::uint64_t out = 0;
  int base = 10;
  if (value.starts_with("0x") || value.starts_with("0X")) {
    value.remove_prefix(2);
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out, base);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(Errc::parse_error, "bad number in attack token '" + std::string(token) + "'");
  }
  return out;
}

Argb parse_fill(std::string_view token, std::string_view value) {
  const bool packed = value.size() > 2 && (value.starts_with("0x") || value.starts_with("0X"));
  const std::uint64_t v = parse_uint(token, value);
  if (packed) {
    if (v > 0xFFFFFFFFULL) {
      throw Error(Errc::parse_error, "fill out of range in '" + std::string(token) + "'");
    }
    return Argb{static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  }
  if (v > 255) {
    throw Error(Errc::parse_error, "fill out of range in '" + std::string(token) + "'");
  }
  const auto c = static_cast<std::uint8_t>(v);
  return Argb{c, c, c, c};
}

// key=value list; every key in `allowed` must appear exactly once.
std::map<std::string, std::string, std::less<>> parse_params(
    std::string_view params, std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string, std::less<>> out;
  std::size_t start = 0;
  while (start <= params.size()) {
    const std::size_t comma = std::min(params.find(',', start), params.size());
    const std::string_view token = params.substr(start, comma - start);
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(Errc::parse_error, "expected key=value, got '" + std::string(token) + "'");
    }
    const std::string_view key = token.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::parse_error, "unknown attack parameter '" + std::string(token) + "'");
    }
    if (!out.emplace(std::string(key), std::string(token)).second) {
      throw Error(Errc::parse_error, "duplicate attack parameter '" + std::string(token) + "'");
    }
    start = comma + 1;
  }
  for (std::string_view key : allowed) {
    if (!out.contains(key)) {
      throw Error(Errc::parse_error, "missing attack parameter '" + std::string(key) + "'");
    }
  }
  return out;
}

std::string_view value_of(std::string_view token) { return token.substr(token.find('=') + 1); }

Rect parse_rect(const std::map<std::string, std::string, std::less<>>& p) {
  auto get = [&](const char* key) {
    const std::string& tok = p.at(key);
    return static_cast<std::size_t>(parse_uint(tok, value_of(tok)));
  };
  return Rect{get("x"), get("y"), get("w"), get("h")};
}

std::string fill_string(Argb f) {
  if (f.a == f.r && f.r == f.g && f.g == f.b) return std::to_string(f.a);
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out = "0x";
  for (std::uint8_t c : {f.a, f.r, f.g, f.b}) {
    out += kHex[c >> 4];
    out += kHex[c & 15];
  }
  return out;
}

std::string rect_string(Rect r) {
  return "x=" + std::to_string(r.x) + ",y=" + std::to_string(r.y) +
         ",w=" + std::to_string(r.width) + ",h=" + std::to_string(r.height);
}

}  // namespace

ArgbImage zero_lsb(const ArgbImage& image, int k) {
  if (k < 0 || k > 8) {
    throw Error(Errc::k_out_of_range, "zero-lsb k must be in [0, 8], got " + std::to_string(k));
  }
  const auto mask = static_cast<std::uint8_t>(0xFF << k);
  std::vector<Argb> pixels(image.pixels().begin(), image.pixels().end());
  for (Argb& p : pixels) {
    for (Channel c : kChannelOrder) p[c] &= mask;
  }
  return ArgbImage(image.width(), image.height(), std::move(pixels));
}

ArgbImage crop(const ArgbImage& image, Rect keep, Argb fill) {
  require_inside(image, keep);
  return fill_where(image, fill, [&](std::size_t x, std::size_t y) { return contains(keep, x, y); });
}

ArgbImage erase_region(const ArgbImage& image, Rect region, Argb fill) {
  require_inside(image, region);
  return fill_where(image, fill,
                    [&](std::size_t x, std::size_t y) { return !contains(region, x, y); });
}

ArgbImage add_noise(const ArgbImage& image, int amplitude, std::uint64_t seed) {
  if (amplitude < 0 || amplitude > 255) {
    throw Error(Errc::invalid_argument,
                "noise amplitude must be in [0, 255], got " + std::to_string(amplitude));
  }
  const auto span = static_cast<std::uint64_t>(2 * amplitude + 1);
  KeyStream stream(seed);
  std::vector<Argb> pixels(image.pixels().begin(), image.pixels().end());
  for (Argb& p : pixels) {
    for (Channel c : kChannelOrder) {
      const int delta = static_cast<int>(stream.next() % span) - amplitude;
      p[c] = static_cast<std::uint8_t>(std::clamp(p[c] + delta, 0, 255));
    }
  }
  return ArgbImage(image.width(), image.height(), std::move(pixels));
}

AttackSpec parse_attack(std::string_view text) {
  if (text == "none") return NoAttack{};
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view params =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "zero-lsb") {
    const auto p = parse_params(params, {"k"});
    const auto k = parse_uint(p.at("k"), value_of(p.at("k")));
    if (k > 8) throw Error(Errc::k_out_of_range, "zero-lsb k must be in [0, 8]: '" + p.at("k") + "'");
    return ZeroLsbAttack{static_cast<int>(k)};
  }
  if (kind == "crop" || kind == "erase") {
    const auto p = parse_params(params, {"x", "y", "w", "h", "fill"});
    const Rect r = parse_rect(p);
    const Argb fill = parse_fill(p.at("fill"), value_of(p.at("fill")));
    if (kind == "crop") return CropAttack{r, fill};
    return EraseAttack{r, fill};
  }
  if (kind == "noise") {
    const auto p = parse_params(params, {"amp", "seed"});
    const auto amp = parse_uint(p.at("amp"), value_of(p.at("amp")));
    if (amp > 255) {
      throw Error(Errc::parse_error, "noise amplitude out of range: '" + p.at("amp") + "'");
    }
    return NoiseAttack{static_cast<int>(amp), parse_uint(p.at("seed"), value_of(p.at("seed")))};
  }
  throw Error(Errc::parse_error, "unknown attack '" + std::string(kind) +
                                     "' (none|zero-lsb|crop|erase|noise)");
}

std::string to_string(const AttackSpec& spec) {
  struct Printer {
    std::string operator()(const NoAttack&) const { return "none"; }
    std::string operator()(const ZeroLsbAttack& a) const { return "zero-lsb:k=" + std::to_string(a.k); }
    std::string operator()(const CropAttack& a) const {
      return "crop:" + rect_string(a.keep) + ",fill=" + fill_string(a.fill);
    }
    std::string operator()(const EraseAttack& a) const {
      return "erase:" + rect_string(a.region) + ",fill=" + fill_string(a.fill);
    }
    std::string operator()(const NoiseAttack& a) const {
      return "noise:amp=" + std::to_string(a.amplitude) + ",seed=" + std::to_string(a.seed);
    }
  };
  return std::visit(Printer{}, spec);
}

ArgbImage apply_attack(const ArgbImage& image, const AttackSpec& spec) {
  struct Apply {
    const ArgbImage& image;
    ArgbImage operator()(const NoAttack&) const { return image; }
    ArgbImage operator()(const ZeroLsbAttack& a) const { return zero_lsb(image, a.k); }
    ArgbImage operator()(const CropAttack& a) const { return crop(image, a.keep, a.fill); }
    ArgbImage operator()(const EraseAttack& a) const { return erase_region(image, a.region, a.fill); }
    ArgbImage operator()(const NoiseAttack& a) const { return add_noise(image, a.amplitude, a.seed); }
  };
  return std::visit(Apply{image}, spec);
}

}  // namespace lsbmark
