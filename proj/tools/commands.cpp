#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "lsbmark/image_io.hpp"
#include "lsbmark/metrics.hpp"

namespace lsbmark::cli {
namespace {

using nlohmann::ordered_json;

int report_error(const Error& e, std::ostream& err) {
  err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
  return exit_code_for(e.code());
}

template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

std::string format_psnr(double db) {
  if (std::isinf(db)) return "inf";
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << db;
  return s.str();
}

bool header_readable(const ArgbImage& image, const SecretKey& key, Method method) {
  try {
    return extract(image, key, method).header_valid;
  } catch (const Error& e) {
    if (e.code() == Errc::no_watermark_found ||
        e.code() == Errc::header_exceeds_capacity) {
      return false;
    }
    throw;
  }
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::file_not_found:
    case Errc::unsupported_format:
    case Errc::corrupt_data:
    case Errc::io_failure:
    case Errc::invalid_image:
      return kExitIo;
    case Errc::watermark_too_large:
    case Errc::reference_too_large:
    case Errc::empty_watermark:
    case Errc::count_exceeds_domain:
      return kExitCapacity;
    case Errc::no_watermark_found:
    case Errc::header_exceeds_capacity:
      return kExitNoWatermark;
    default:
      return kExitUsage;
  }
}

SecretKey resolve_key(const KeySource& source) {
  if (source.flag) return SecretKey::parse(*source.flag);
  if (source.file) {
    std::ifstream in(*source.file, std::ios::binary);
    if (!in) {
      throw Error(std::filesystem::exists(*source.file) ? Errc::io_failure
                                                        : Errc::file_not_found,
                  "cannot read key file: " + source.file->string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.ends_with("\r\n")) {
      text.resize(text.size() - 2);
    } else if (text.ends_with("\n")) {
      text.pop_back();
    }
    return SecretKey::parse(text);
  }
  if (const char* env = std::getenv(kKeyEnvVar); env != nullptr && *env != '\0') {
    return SecretKey::parse(env);
  }
  throw Error(Errc::invalid_key,
              std::string("no key given (use --key, --key-file or ") + kKeyEnvVar + ")");
}

std::string key_fingerprint(const SecretKey& key) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(seed_from_key(key)));
  return std::string(buf, 8);
}

int cmd_embed(const EmbedArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SecretKey key = resolve_key(args.key);
    const ArgbImage host = load_argb(args.host);
    const GrayImage watermark = load_gray(args.watermark);
    const ArgbImage marked = embed(host, watermark, key, args.method);
    save_argb(marked, args.out);

    const std::uint64_t available = capacity(host, args.method);
    const std::uint64_t used = watermark.size() * 8;
    out << "method: " << to_string(args.method) << "\n"
        << "capacity used: " << used << " of " << available << " payload bits ("
        << std::fixed << std::setprecision(2)
        << 100.0 * static_cast<double>(used) / static_cast<double>(available) << "%)\n"
        << "psnr: " << format_psnr(psnr(host, marked)) << " dB\n";
    return kExitOk;
  });
}

int cmd_extract(const ExtractArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SecretKey key = resolve_key(args.key);
    const ArgbImage image = load_argb(args.image);
    const ExtractionResult result = extract(image, key, args.method, args.dimensions);
    save_gray(result.watermark, args.out);
    out << "watermark: " << result.watermark.width() << "x" << result.watermark.height() << "\n"
        << "header_valid: " << (result.header_valid ? "true" : "false") << "\n"
        << "checksum_valid: " << (result.checksum_valid ? "true" : "false") << "\n";
    return kExitOk;
  });
}

int cmd_attack(const AttackArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AttackSpec spec = parse_attack(args.spec);
    const ArgbImage image = load_argb(args.image);
    save_argb(apply_attack(image, spec), args.out);
    out << "applied " << to_string(spec) << "\n";
    return kExitOk;
  });
}

int cmd_capacity(const CapacityArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ArgbImage host = load_argb(args.host);
    out << "method: " << to_string(args.method) << "\n"
        << "payload bits: " << capacity(host, args.method) << "\n"
        << "max watermark pixels: " << max_watermark_pixels(host.size(), args.method) << "\n";
    return kExitOk;
  });
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SecretKey key = resolve_key(args.key);
    const ArgbImage host = load_argb(args.host);
    const GrayImage watermark = load_gray(args.watermark);
    const EvaluationReport report = evaluate(host, watermark, key);

    std::ofstream file(args.report, std::ios::binary | std::ios::trunc);
    file << report_to_json(report);
    file.flush();
    if (!file) throw Error(Errc::io_failure, "cannot write report: " + args.report.string());

    out << std::left << std::setw(10) << "method" << std::setw(36) << "attack"
        << std::right << std::setw(9) << "psnr_db" << std::setw(9) << "ber"
        << std::setw(9) << "nc" << std::setw(10) << "detected" << std::setw(8)
        << "header" << "\n";
    for (const auto& c : report.cases) {
      out << std::left << std::setw(10) << to_string(c.method) << std::setw(36) << c.attack
          << std::right << std::setw(9) << format_psnr(c.psnr_db) << std::fixed
          << std::setprecision(4) << std::setw(9) << c.ber << std::setw(9) << c.nc
          << std::setw(10) << (c.detected ? "yes" : "no") << std::setw(8)
          << (c.header_valid ? "ok" : "lost") << "\n";
    }
    return kExitOk;
  });
}

std::vector<AttackSpec> evaluation_attacks(std::size_t width, std::size_t height) {
  const std::size_t w = width / 2;
  const std::size_t h = height / 2;
  return {
      NoAttack{},
      ZeroLsbAttack{1},
      ZeroLsbAttack{2},
      EraseAttack{Rect{(width - w) / 2, (height - h) / 2, w, h}, Argb{0, 0, 0, 0}},
      NoiseAttack{4, 1},
  };
}

EvaluationReport evaluate(const ArgbImage& host, const GrayImage& watermark,
                          const SecretKey& key) {
  EvaluationReport report;
  report.key_fingerprint = key_fingerprint(key);
  report.host = {host.width(), host.height()};
  report.watermark = {watermark.width(), watermark.height()};
  const auto attacks = evaluation_attacks(host.width(), host.height());

  for (Method method : {Method::Classic, Method::Modified}) {
    const ArgbImage marked = embed(host, watermark, key, method);
    for (const AttackSpec& attack : attacks) {
      const ArgbImage attacked = apply_attack(marked, attack);
      const GrayImage recovered = decode_payload(
          attacked, key, method, Dimensions{watermark.width(), watermark.height()});
      const QualityReport q = assess(host, attacked, watermark, recovered);
      EvaluationCase c;
      c.method = method;
      c.attack = to_string(attack);
      c.psnr_db = q.psnr;
      c.ber = q.ber;
      c.nc = q.nc;
      c.detected = detect(attacked, key, watermark, method, report.detection_threshold).detected;
      c.header_valid = header_readable(attacked, key, method);
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

std::string report_to_json(const EvaluationReport& report) {
  auto number = [](double v) -> ordered_json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  ordered_json meta = {
      {"key_fingerprint", report.key_fingerprint},
      {"host", {{"width", report.host.width}, {"height", report.host.height}}},
      {"watermark", {{"width", report.watermark.width}, {"height", report.watermark.height}}},
      {"detection_threshold", report.detection_threshold},
  };
  ordered_json cases = ordered_json::array();
  for (const auto& c : report.cases) {
    cases.push_back({
        {"method", std::string(to_string(c.method))},
        {"attack", c.attack},
        {"psnr_db", number(c.psnr_db)},
        {"ber", c.ber},
        {"nc", c.nc},
        {"detected", c.detected},
        {"header_valid", c.header_valid},
    });
  }
  ordered_json doc = {{"meta", meta}, {"cases", cases}};
  return doc.dump(2) + "\n";
}

}  // namespace lsbmark::cli
