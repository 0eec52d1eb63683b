// numpy-facing wrapper around the core library.
// Gray images are (h, w) uint8 arrays; ARGB images are (h, w, 4) uint8 in
// a, r, g, b channel order.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lsbmark/attacks.hpp"
#include "lsbmark/codec.hpp"
#include "lsbmark/image_io.hpp"
#include "lsbmark/keystream.hpp"
#include "lsbmark/metrics.hpp"

namespace py = pybind11;
using namespace lsbmark;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GrayImage to_gray(const U8Array& a) {
  if (a.ndim() != 2) throw Error(Errc::invalid_image, "gray image must be a 2-D uint8 array");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  return GrayImage(w, h, std::vector<std::uint8_t>(a.data(), a.data() + w * h));
}

py::array_t<std::uint8_t> from_gray(const GrayImage& img) {
  py::array_t<std::uint8_t> out({img.height(), img.width()});
  std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
  return out;
}

ArgbImage to_argb(const U8Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 4) {
    throw Error(Errc::invalid_image, "ARGB image must be a (h, w, 4) uint8 array");
  }
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  std::vector<Argb> px(w * h);
  const std::uint8_t* p = a.data();
  for (auto& q : px) {
    q = Argb{p[0], p[1], p[2], p[3]};
    p += 4;
  }
  return ArgbImage(w, h, std::move(px));
}

py::array_t<std::uint8_t> from_argb(const ArgbImage& img) {
  py::array_t<std::uint8_t> out({img.height(), img.width(), std::size_t{4}});
  std::uint8_t* p = out.mutable_data();
  for (const Argb& q : img.pixels()) {
    *p++ = q.a;
    *p++ = q.r;
    *p++ = q.g;
    *p++ = q.b;
  }
  return out;
}

// str goes through the text rules (UTF-8 or "hex:..."), bytes are taken raw
SecretKey to_key(const py::object& key) {
  if (py::isinstance<py::bytes>(key)) {
    const std::string raw = key.cast<std::string>();
    return SecretKey(std::vector<std::uint8_t>(raw.begin(), raw.end()));
  }
  if (py::isinstance<py::str>(key)) return SecretKey::parse(key.cast<std::string>());
  throw py::type_error("key must be str or bytes");
}

Method to_method(const std::string& name) { return parse_method(name); }

std::optional<Dimensions> to_dims(const std::optional<std::pair<std::size_t, std::size_t>>& wh) {
  if (!wh) return std::nullopt;
  return Dimensions{wh->first, wh->second};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Keyed spatial-domain LSB watermarking (modified 2-bit ARGB and classic 1-bit RGB)";

  static py::exception<Error> error_type(m, "LsbmarkError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.attr("HEADER_BITS") = kHeaderBits;
  m.attr("MAGIC") = kMagic;
  m.attr("DEFAULT_DETECTION_THRESHOLD") = kDefaultDetectionThreshold;

  // io
  m.def("load_argb", [](const std::filesystem::path& p) { return from_argb(load_argb(p)); });
  m.def("save_argb", [](const U8Array& a, const std::filesystem::path& p) { save_argb(to_argb(a), p); });
  m.def("load_gray", [](const std::filesystem::path& p) { return from_gray(load_gray(p)); });
  m.def("save_gray", [](const U8Array& a, const std::filesystem::path& p) { save_gray(to_gray(a), p); });

  // keying
  m.def("seed_from_key", [](const py::object& key) { return seed_from_key(to_key(key)); });
  m.def("keyed_stream_next", [](std::uint64_t state) { return keyed_stream_next(state); },
        "returns (value, next_state)");
  m.def("derive_permutation",
        [](const py::object& key, std::size_t n, std::size_t count) {
          const auto plan = derive_permutation(to_key(key), n, count);
          return std::vector<std::size_t>(plan.indices().begin(), plan.indices().end());
        },
        py::arg("key"), py::arg("domain_size"), py::arg("count"));

  // codec
  m.def("encode_byte", [](std::array<std::uint8_t, 4> argb, std::uint8_t w) {
    const Argb p = encode_byte_into_pixel(Argb{argb[0], argb[1], argb[2], argb[3]}, w);
    return std::array<std::uint8_t, 4>{p.a, p.r, p.g, p.b};
  });
  m.def("decode_byte", [](std::array<std::uint8_t, 4> argb) {
    return decode_byte_from_pixel(Argb{argb[0], argb[1], argb[2], argb[3]});
  });
  m.def("crc16_ccitt_false", [](const py::bytes& b) {
    const std::string s = b;
    return crc16_ccitt_false(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  });
  m.def("capacity_bits", [](std::size_t n, const std::string& method) {
    return capacity_bits(n, to_method(method));
  }, py::arg("pixel_count"), py::arg("method") = "modified");
  m.def("max_watermark_pixels", [](std::size_t n, const std::string& method) {
    return max_watermark_pixels(n, to_method(method));
  }, py::arg("pixel_count"), py::arg("method") = "modified");
  m.def("embed",
        [](const U8Array& host, const U8Array& wm, const py::object& key, const std::string& method) {
          return from_argb(embed(to_argb(host), to_gray(wm), to_key(key), to_method(method)));
        },
        py::arg("host"), py::arg("watermark"), py::arg("key"), py::arg("method") = "modified");
  m.def("extract",
        [](const U8Array& image, const py::object& key, const std::string& method,
           std::optional<std::pair<std::size_t, std::size_t>> dims) {
          const auto r = extract(to_argb(image), to_key(key), to_method(method), to_dims(dims));
          py::dict out;
          out["watermark"] = from_gray(r.watermark);
          out["header_valid"] = r.header_valid;
          out["checksum_valid"] = r.checksum_valid;
          out["width"] = r.header.wm_width;
          out["height"] = r.header.wm_height;
          return out;
        },
        py::arg("image"), py::arg("key"), py::arg("method") = "modified",
        py::arg("dimensions") = py::none(), "dimensions is an optional (width, height) override");
  m.def("decode_payload",
        [](const U8Array& image, const py::object& key, const std::string& method,
           std::pair<std::size_t, std::size_t> dims) {
          return from_gray(decode_payload(to_argb(image), to_key(key), to_method(method),
                                          Dimensions{dims.first, dims.second}));
        },
        py::arg("image"), py::arg("key"), py::arg("method"), py::arg("dimensions"));
  m.def("detect",
        [](const U8Array& image, const py::object& key, const U8Array& reference,
           const std::string& method, double threshold) {
          const Detection d = detect(to_argb(image), to_key(key), to_gray(reference),
                                     to_method(method), threshold);
          return std::make_pair(d.score, d.detected);
        },
        py::arg("image"), py::arg("key"), py::arg("reference"), py::arg("method") = "modified",
        py::arg("threshold") = kDefaultDetectionThreshold, "returns (score, detected)");

  // attacks
  m.def("zero_lsb", [](const U8Array& a, int k) { return from_argb(zero_lsb(to_argb(a), k)); },
        py::arg("image"), py::arg("k"));
  m.def("add_noise",
        [](const U8Array& a, int amp, std::uint64_t seed) {
          return from_argb(add_noise(to_argb(a), amp, seed));
        },
        py::arg("image"), py::arg("amplitude"), py::arg("seed"));
  m.def("attack",
        [](const U8Array& a, const std::string& spec) {
          return from_argb(apply_attack(to_argb(a), parse_attack(spec)));
        },
        py::arg("image"), py::arg("spec"), "apply a textual attack spec such as 'zero-lsb:k=1'");
  m.def("normalize_attack", [](const std::string& spec) { return to_string(parse_attack(spec)); });

  // metrics
  m.def("psnr", [](const U8Array& a, const U8Array& b) {
    if (a.ndim() == 3) return psnr(to_argb(a), to_argb(b));
    return psnr(to_gray(a), to_gray(b));
  });
  m.def("mse", [](const U8Array& a, const U8Array& b) {
    if (a.ndim() == 3) return mse(to_argb(a), to_argb(b));
    return mse(to_gray(a), to_gray(b));
  });
  m.def("byte_ber", [](const U8Array& a, const U8Array& b) {
    return byte_ber(std::span(a.data(), a.size()), std::span(b.data(), b.size()));
  });
  m.def("normalized_correlation", [](const U8Array& a, const U8Array& b) {
    return normalized_correlation(to_gray(a), to_gray(b));
  });
}
