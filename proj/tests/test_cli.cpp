#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "lsbmark/image_io.hpp"
#include "lsbmark/metrics.hpp"
#include "test_support.hpp"

using namespace lsbmark;
using namespace lsbmark::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class Args, class Fn>
Run run(Fn fn, const Args& args) {
  std::ostringstream out, err;
  const int code = fn(args, out, err);
  return {code, out.str(), err.str()};
}

KeySource flag_key(const std::string& k) { return KeySource{k, std::nullopt}; }

int shell(const std::string& command) {
  const int status = std::system((command + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string tool() { return LSBMARK_CLI_PATH; }

}  // namespace

TEST_CASE("exit code contract") {
  CHECK(exit_code_for(Errc::parse_error) == 1);
  CHECK(exit_code_for(Errc::file_not_found) == 2);
  CHECK(exit_code_for(Errc::corrupt_data) == 2);
  CHECK(exit_code_for(Errc::watermark_too_large) == 3);
  CHECK(exit_code_for(Errc::no_watermark_found) == 4);
}

TEST_CASE("key resolution precedence") {
  test::TempDir dir;
  test::write_bytes(dir / "key.txt", {'f', 'i', 'l', 'e', '\n'});
  ::setenv(kKeyEnvVar, "from-env", 1);
  CHECK(resolve_key({std::string("flag"), dir / "key.txt"}) == SecretKey::parse("flag"));
  CHECK(resolve_key({std::nullopt, dir / "key.txt"}) == SecretKey::parse("file"));
  CHECK(resolve_key({}) == SecretKey::parse("from-env"));
  ::unsetenv(kKeyEnvVar);
  CHECK_THROWS_AS(resolve_key({}), Error);
  test::write_bytes(dir / "hex.txt", {'h', 'e', 'x', ':', '0', '0', '\r', '\n'});
  CHECK(resolve_key({std::nullopt, dir / "hex.txt"}) == SecretKey(std::vector<std::uint8_t>{0}));
  CHECK(key_fingerprint(SecretKey::parse("a")) == "af63dc4c");
}

TEST_CASE("embed, extract and capacity commands") {
  test::TempDir dir;
  std::mt19937_64 rng(12);
  const ArgbImage host = test::random_argb(rng, 100, 100);
  const GrayImage wm = test::random_gray(rng, 64, 64);
  save_argb(host, dir / "host.png");
  save_gray(wm, dir / "wm.pgm");

  EmbedArgs e{dir / "host.png", dir / "wm.pgm", dir / "marked.png", flag_key("cli-key"),
              Method::Modified};
  const Run embedded = run(cmd_embed, e);
  REQUIRE(embedded.code == 0);
  CHECK(embedded.out.find("32768 of 79936") != std::string::npos);
  CHECK(embedded.out.find("psnr:") != std::string::npos);
  CHECK(load_argb(dir / "marked.png") == embed(host, wm, SecretKey::parse("cli-key"), Method::Modified));

  ExtractArgs x{dir / "marked.png", dir / "out.pgm", flag_key("cli-key"), Method::Modified, {}};
  const Run extracted = run(cmd_extract, x);
  REQUIRE(extracted.code == 0);
  CHECK(load_gray(dir / "out.pgm") == wm);
  CHECK(extracted.out.find("checksum_valid: true") != std::string::npos);

  SUBCASE("oversized watermark names both capacities") {
    save_gray(test::random_gray(rng, 100, 100), dir / "big.pgm");
    EmbedArgs big = e;
    big.watermark = dir / "big.pgm";
    const Run r = run(cmd_embed, big);
    CHECK(r.code == kExitCapacity);
    CHECK(r.err.find("80000") != std::string::npos);
    CHECK(r.err.find("79936") != std::string::npos);
  }
  SUBCASE("missing host") {
    EmbedArgs missing = e;
    missing.host = dir / "nope.png";
    const Run r = run(cmd_embed, missing);
    CHECK(r.code == kExitIo);
    CHECK(r.err.find("file-not-found") != std::string::npos);
  }
  SUBCASE("wrong keys give the no-watermark code") {
    int rejected = 0;
    for (int i = 0; i < 100; ++i) {
      ExtractArgs wrong = x;
      wrong.key = flag_key("wrong-" + std::to_string(i));
      rejected += run(cmd_extract, wrong).code == kExitNoWatermark;
    }
    CHECK(rejected >= 99);
  }
  SUBCASE("damaged payload with intact header still exits 0") {
    const ArgbImage marked = load_argb(dir / "marked.png");
    const auto plan = derive_permutation(SecretKey::parse("cli-key"), marked.size(), 8 + wm.size());
    std::vector<Argb> px(marked.pixels().begin(), marked.pixels().end());
    px[plan[100]].g ^= 2;
    save_argb(ArgbImage(100, 100, std::move(px)), dir / "damaged.png");
    ExtractArgs d = x;
    d.image = dir / "damaged.png";
    const Run r = run(cmd_extract, d);
    CHECK(r.code == 0);
    CHECK(r.out.find("header_valid: true") != std::string::npos);
    CHECK(r.out.find("checksum_valid: false") != std::string::npos);
  }
  SUBCASE("zero-lsb attacked image with dimension override") {
    save_argb(zero_lsb(load_argb(dir / "marked.png"), 1), dir / "z1.png");
    ExtractArgs blind = x;
    blind.image = dir / "z1.png";
    CHECK(run(cmd_extract, blind).code == kExitNoWatermark);
    ExtractArgs forced = blind;
    forced.dimensions = Dimensions{64, 64};
    const Run r = run(cmd_extract, forced);
    CHECK(r.code == 0);
    CHECK(r.out.find("checksum_valid: false") != std::string::npos);
    const GrayImage got = load_gray(dir / "out.pgm");
    for (std::size_t i = 0; i < wm.size(); ++i) REQUIRE(got[i] == (wm[i] & 0xAA));
  }
  SUBCASE("capacity") {
    const Run m = run(cmd_capacity, CapacityArgs{dir / "host.png", Method::Modified});
    CHECK(m.out.find("payload bits: 79936") != std::string::npos);
    CHECK(m.out.find("max watermark pixels: 9992") != std::string::npos);
    const Run c = run(cmd_capacity, CapacityArgs{dir / "host.png", Method::Classic});
    CHECK(c.out.find("payload bits: 29936") != std::string::npos);
    save_argb(ArgbImage(1, 1, Argb{}), dir / "one.png");
    const Run tiny = run(cmd_capacity, CapacityArgs{dir / "one.png", Method::Modified});
    CHECK(tiny.out.find("payload bits: 0\n") != std::string::npos);
    CHECK(tiny.out.find("max watermark pixels: 0\n") != std::string::npos);
  }
}

TEST_CASE("attack command") {
  test::TempDir dir;
  std::mt19937_64 rng(13);
  const ArgbImage img = test::random_argb(rng, 8, 8);
  save_argb(img, dir / "in.png");
  CHECK(run(cmd_attack, AttackArgs{dir / "in.png", "zero-lsb:k=1", dir / "z.png"}).code == 0);
  CHECK(load_argb(dir / "z.png") == zero_lsb(img, 1));

  const Run oob = run(cmd_attack, AttackArgs{dir / "in.png", "crop:x=0,y=0,w=10,h=10,fill=0", dir / "c.png"});
  CHECK(oob.code == kExitUsage);
  CHECK(oob.err.find("rectangle-out-of-bounds") != std::string::npos);

  CHECK(run(cmd_attack, AttackArgs{dir / "in.png", "noise:amp=4,seed=7", dir / "n1.png"}).code == 0);
  CHECK(run(cmd_attack, AttackArgs{dir / "in.png", "noise:amp=4,seed=7", dir / "n2.png"}).code == 0);
  CHECK(test::read_bytes(dir / "n1.png") == test::read_bytes(dir / "n2.png"));

  const Run bad = run(cmd_attack, AttackArgs{dir / "in.png", "noise:amp=4,sede=7", dir / "x.png"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("'sede=7'") != std::string::npos);
}

TEST_CASE("evaluate command") {
  test::TempDir dir;
  std::mt19937_64 rng(14);
  const ArgbImage host = test::random_argb(rng, 128, 128);
  const GrayImage wm = test::random_gray(rng, 64, 64);
  save_argb(host, dir / "host.png");
  save_gray(wm, dir / "wm.pgm");

  EvaluateArgs args{dir / "host.png", dir / "wm.pgm", dir / "report.json", flag_key("eval")};
  const Run r = run(cmd_evaluate, args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("modified") != std::string::npos);
  const auto first = test::read_bytes(dir / "report.json");
  REQUIRE(run(cmd_evaluate, args).code == 0);
  CHECK(test::read_bytes(dir / "report.json") == first);

  const auto doc = nlohmann::json::parse(first.begin(), first.end());
  CHECK(doc["meta"]["key_fingerprint"] == key_fingerprint(SecretKey::parse("eval")));
  CHECK(doc["meta"]["host"]["width"] == 128);
  CHECK(doc["meta"]["watermark"]["height"] == 64);
  const auto& cases = doc["cases"];
  REQUIRE(cases.size() == 10);
  std::map<std::pair<std::string, std::string>, nlohmann::json> by;
  for (const auto& c : cases) {
    for (const char* field : {"method", "attack", "psnr_db", "ber", "nc", "detected", "header_valid"}) {
      CHECK(c.contains(field));
    }
    by[{c["method"], c["attack"]}] = c;
  }
  const auto& mod_none = by[{"modified", "none"}];
  CHECK(mod_none["ber"] == 0.0);
  CHECK(mod_none["nc"].get<double>() == doctest::Approx(1.0));
  CHECK(mod_none["detected"] == true);
  CHECK(mod_none["header_valid"] == true);
  CHECK(mod_none["psnr_db"].is_number());

  const auto& cls_z1 = by[{"classic", "zero-lsb:k=1"}];
  CHECK(std::abs(cls_z1["ber"].get<double>() - 0.5) <= 0.05);
  CHECK(cls_z1["detected"] == false);

  const auto& mod_z1 = by[{"modified", "zero-lsb:k=1"}];
  CHECK(mod_z1["header_valid"] == false);
  CHECK(by.contains({"modified", "erase:x=32,y=32,w=64,h=64,fill=0"}));
  CHECK(by.contains({"classic", "noise:amp=4,seed=1"}));

  SUBCASE("watermark must fit both methods") {
    save_gray(test::random_gray(rng, 100, 100), dir / "big.pgm");
    EvaluateArgs big = args;
    big.watermark = dir / "big.pgm";
    CHECK(run(cmd_evaluate, big).code == kExitCapacity);
  }
}

TEST_CASE("report serializes infinite psnr as a string") {
  EvaluationReport report;
  report.key_fingerprint = "00000000";
  report.host = {1, 1};
  report.watermark = {1, 1};
  EvaluationCase c;
  c.attack = "none";
  c.psnr_db = kInfinitePsnr;
  c.ber = 0.123456789;
  report.cases.push_back(c);
  const auto doc = nlohmann::json::parse(report_to_json(report));
  CHECK(doc["cases"][0]["psnr_db"] == "inf");
  CHECK(doc["cases"][0]["ber"].get<double>() == doctest::Approx(0.123456789).epsilon(1e-9));
}

TEST_CASE("binary exit codes") {
  test::TempDir dir;
  std::mt19937_64 rng(15);
  save_argb(test::random_argb(rng, 32, 32), dir / "host.png");
  save_gray(test::random_gray(rng, 16, 16), dir / "wm.pgm");
  const std::string d = dir.path().string();

  CHECK(shell(tool() + " capacity --host " + d + "/host.png") == 0);
  CHECK(shell(tool() + " capacity --host " + d + "/host.png --method dct") == 1);
  CHECK(shell(tool() + " frobnicate") == 1);
  CHECK(shell(tool() + " embed --host " + d + "/missing.png --watermark " + d + "/wm.pgm -o " + d +
              "/m.png --key k") == 2);
  CHECK(shell(tool() + " embed --host " + d + "/host.png --watermark " + d + "/wm.pgm -o " + d +
              "/m.png --key k --method classic") == 0);
  CHECK(shell(tool() + " extract --image " + d + "/m.png -o " + d + "/w.pgm --key k --method classic") == 0);
  CHECK(shell(tool() + " extract --image " + d + "/m.png -o " + d + "/w.pgm --key other --method classic") == 4);
  CHECK(shell("LSBMARK_KEY=k " + tool() + " extract --image " + d + "/m.png -o " + d +
              "/w.pgm --method classic") == 0);
  save_gray(test::random_gray(rng, 40, 40), dir / "big.pgm");
  CHECK(shell(tool() + " embed --host " + d + "/host.png --watermark " + d + "/big.pgm -o " + d +
              "/m.png --key k") == 3);
  CHECK(shell(tool() + " attack --image " + d + "/host.png --spec bogus -o " + d + "/a.png") == 1);
  CHECK(shell(tool() + " embed --host " + d + "/host.png --watermark " + d + "/wm.pgm -o " + d +
              "/m.png") == 1);
}
