#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lsbmark/attacks.hpp"
#include "lsbmark/codec.hpp"
#include "lsbmark/error.hpp"
#include "lsbmark/image.hpp"
#include "lsbmark/keystream.hpp"

namespace lsbmark::cli {

namespace fs = std::filesystem;

// Stable exit-code contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitCapacity = 3,
  kExitNoWatermark = 4,
};

int exit_code_for(Errc code) noexcept;

inline constexpr const char* kKeyEnvVar = "LSBMARK_KEY";

/// Where a key may come from. Precedence: flag, then file, then environment.
struct KeySource {
  std::optional<std::string> flag;
  std::optional<fs::path> file;
};

/// Resolves the key. A key file has one trailing newline (LF or CRLF)
/// stripped; the remaining text follows SecretKey::parse.
SecretKey resolve_key(const KeySource& source);

/// First eight hex digits of the key seed, for reports.
std::string key_fingerprint(const SecretKey& key);

struct EmbedArgs {
  fs::path host;
  fs::path watermark;
  fs::path out;
  KeySource key;
  Method method = Method::Modified;
};

struct ExtractArgs {
  fs::path image;
  fs::path out;
  KeySource key;
  Method method = Method::Modified;
  std::optional<Dimensions> dimensions;  // overrides the header's size fields
};

struct AttackArgs {
  fs::path image;
  std::string spec;
  fs::path out;
};

struct EvaluateArgs {
  fs::path host;
  fs::path watermark;
  fs::path report;
  KeySource key;
};

struct CapacityArgs {
  fs::path host;
  Method method = Method::Modified;
};

int cmd_embed(const EmbedArgs& args, std::ostream& out, std::ostream& err);
int cmd_extract(const ExtractArgs& args, std::ostream& out, std::ostream& err);
int cmd_attack(const AttackArgs& args, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_capacity(const CapacityArgs& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------- evaluation --

struct EvaluationCase {
  Method method = Method::Modified;
  std::string attack;
  double psnr_db = 0.0;
  double ber = 0.0;
  double nc = 0.0;
  bool detected = false;
  bool header_valid = false;
};

struct EvaluationReport {
  std::string key_fingerprint;
  Dimensions host;
  Dimensions watermark;
  double detection_threshold = kDefaultDetectionThreshold;
  std::vector<EvaluationCase> cases;
};

/// Attacks of the fixed evaluation grid for a host of the given size, in
/// report order: none, zero-lsb k=1, zero-lsb k=2, centered quarter-area
/// erase (fill 0), noise amp=4 seed=1.
std::vector<AttackSpec> evaluation_attacks(std::size_t width, std::size_t height);

/// Runs {Classic, Modified} x evaluation_attacks(). Throws on embed failure.
EvaluationReport evaluate(const ArgbImage& host, const GrayImage& watermark,
                          const SecretKey& key);

/// JSON form: {meta: {...}, cases: [{method, attack, psnr_db, ber, nc,
/// detected, header_valid}]}. Infinite PSNR is the string "inf".
std::string report_to_json(const EvaluationReport& report);

}  // namespace lsbmark::cli
