#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace lsbmark;
using namespace lsbmark::cli;

void add_key_options(CLI::App* cmd, KeySource& key) {
  cmd->add_option("--key", key.flag,
                  "secret key: UTF-8 text, or hex bytes as hex:00ff...");
  cmd->add_option("--key-file", key.file, "read the key from a file")->check(CLI::ExistingFile);
}

void add_method_option(CLI::App* cmd, Method& method) {
  cmd->add_option_function<std::string>(
         "--method", [&method](const std::string& name) { method = parse_method(name); },
         "modified (default) or classic")
      ->check(CLI::IsMember({"modified", "classic"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lsbmark: spatial-domain LSB watermarking (modified 2-bit ARGB and classic)"};
  app.require_subcommand(1);

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "hide a grayscale watermark in a host PNG");
  embed_cmd->add_option("--host", embed.host, "host PNG (RGB or RGBA)")->required();
  embed_cmd->add_option("--watermark", embed.watermark, "watermark (PGM P5 or gray PNG)")->required();
  embed_cmd->add_option("-o,--out", embed.out, "watermarked PNG to write")->required();
  add_key_options(embed_cmd, embed.key);
  add_method_option(embed_cmd, embed.method);

  ExtractArgs extract;
  std::size_t width = 0;
  std::size_t height = 0;
  auto* extract_cmd = app.add_subcommand("extract", "recover the watermark with the key");
  extract_cmd->add_option("--image", extract.image, "watermarked PNG")->required();
  extract_cmd->add_option("-o,--out", extract.out, "recovered watermark (.pgm, or .png)")->required();
  auto* w_opt = extract_cmd->add_option("--width", width, "override header width")->check(CLI::PositiveNumber);
  auto* h_opt = extract_cmd->add_option("--height", height, "override header height")->check(CLI::PositiveNumber);
  w_opt->needs(h_opt);
  h_opt->needs(w_opt);
  add_key_options(extract_cmd, extract.key);
  add_method_option(extract_cmd, extract.method);

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand("attack", "apply a degradation to an image");
  attack_cmd->add_option("--image", attack.image, "input PNG")->required();
  attack_cmd->add_option("--spec", attack.spec,
                         "zero-lsb:k=1 | crop:x=,y=,w=,h=,fill= | erase:x=,y=,w=,h=,fill= | noise:amp=,seed=")
      ->required();
  attack_cmd->add_option("-o,--out", attack.out, "attacked PNG to write")->required();

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "run the fixed method x attack grid");
  evaluate_cmd->add_option("--host", evaluate.host, "host PNG")->required();
  evaluate_cmd->add_option("--watermark", evaluate.watermark, "watermark image")->required();
  evaluate_cmd->add_option("--report", evaluate.report, "JSON report to write")->required();
  add_key_options(evaluate_cmd, evaluate.key);

  CapacityArgs cap;
  auto* capacity_cmd = app.add_subcommand("capacity", "print payload capacity of a host");
  capacity_cmd->add_option("--host", cap.host, "host PNG")->required();
  add_method_option(capacity_cmd, cap.method);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*embed_cmd) return cmd_embed(embed, std::cout, std::cerr);
  if (*extract_cmd) {
    if (*w_opt) extract.dimensions = Dimensions{width, height};
    return cmd_extract(extract, std::cout, std::cerr);
  }
  if (*attack_cmd) return cmd_attack(attack, std::cout, std::cerr);
  if (*evaluate_cmd) return cmd_evaluate(evaluate, std::cout, std::cerr);
  if (*capacity_cmd) return cmd_capacity(cap, std::cout, std::cerr);
  return kExitUsage;
}
