/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 *
 * Command-line front end over the mwpaug C API. Exit codes: 0 success,
 * 1 usage or parse error, 2 I/O error, 3 verification failure.
 */
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwpaug.h"

namespace {

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mwp_string_free(ptr); }
  OwnedString() = default;
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
};

struct OwnedSet {
  mwp_eqset* ptr = nullptr;
  ~OwnedSet() { mwp_eqset_free(ptr); }
  OwnedSet() = default;
  OwnedSet(const OwnedSet&) = delete;
  OwnedSet& operator=(const OwnedSet&) = delete;
};

int status_exit(mwp_status status) {
  switch (status) {
    case MWP_OK:
      return 0;
    case MWP_ERR_IO:
      return 2;
    case MWP_ERR_VERIFY:
      return 3;
    default:
      return 1;
  }
}

int fail_with(mwp_status status) {
  std::cerr << "error: " << mwp_last_error() << "\n";
  return status_exit(status);
}

/// Shared by parse/canon/transform: equations from positionals or a single
/// prefix stream from --prefix.
mwp_status build_set(const std::vector<std::string>& equations,
                     const std::string& prefix, mwp_eqset** out) {
  if (!prefix.empty()) return mwp_eqset_from_prefix(prefix.c_str(), out);
  std::vector<const char*> raw;
  raw.reserve(equations.size());
  for (const std::string& eq : equations) raw.push_back(eq.c_str());
  return mwp_eqset_parse(raw.data(), raw.size(), out);
}

int print_set(const mwp_eqset* set) {
  OwnedString infix;
  OwnedString prefix;
  mwp_status status = mwp_eqset_infix(set, &infix.ptr);
  if (status != MWP_OK) return fail_with(status);
  status = mwp_eqset_prefix(set, &prefix.ptr);
  if (status != MWP_OK) return fail_with(status);
  std::cout << infix.ptr << "\n" << prefix.ptr << "\n";
  return 0;
}

struct ParseArgs {
  std::vector<std::string> equations;
  std::string prefix;
};

int run_parse(const ParseArgs& args) {
  OwnedSet set;
  const mwp_status status = build_set(args.equations, args.prefix, &set.ptr);
  if (status != MWP_OK) return fail_with(status);
  return print_set(set.ptr);
}

int run_canon(const ParseArgs& args) {
  OwnedSet set;
  mwp_status status = build_set(args.equations, args.prefix, &set.ptr);
  if (status != MWP_OK) return fail_with(status);
  OwnedSet canon;
  status = mwp_eqset_canonicalize(set.ptr, &canon.ptr);
  if (status != MWP_OK) return fail_with(status);
  return print_set(canon.ptr);
}

struct TransformArgs {
  ParseArgs input;
  std::string code;
};

int run_transform(const TransformArgs& args) {
  OwnedSet set;
  mwp_status status =
      build_set(args.input.equations, args.input.prefix, &set.ptr);
  if (status != MWP_OK) return fail_with(status);
  OwnedSet result;
  status = mwp_eqset_transform(set.ptr, args.code.c_str(), &result.ptr);
  if (status != MWP_OK) return fail_with(status);
  if (result.ptr == nullptr) {
    std::cout << "unchanged\n";
    return 0;
  }
  return print_set(result.ptr);
}

struct AugmentArgs {
  std::string input;
  std::string format = "normalized-jsonl";
  std::string output;
  std::string report;
  std::string stats;
  std::string codes;
  std::string style = "token";
  std::string lang = "en";
  std::string position = "front";
  bool verify = true;
  int jobs = 1;
  std::uint64_t seed = 42;
  int samples = 100;
  double tolerance = 1e-6;
};

int run_augment(const AugmentArgs& args) {
  mwp_augment_options options;
  mwp_augment_options_init(&options);
  options.codes = args.codes.empty() ? nullptr : args.codes.c_str();
  options.style = args.style.c_str();
  options.lang = args.lang.c_str();
  options.position = args.position.c_str();
  options.verify = args.verify ? 1 : 0;
  options.jobs = args.jobs;
  options.seed = args.seed;
  options.samples = args.samples;
  options.tolerance = args.tolerance;

  OwnedString stats;
  OwnedString issues;
  const mwp_status status = mwp_augment_file(
      args.input.c_str(), args.format.c_str(), args.output.c_str(),
      args.report.empty() ? nullptr : args.report.c_str(), &options,
      &stats.ptr, &issues.ptr);
  if (status != MWP_OK) return fail_with(status);

  if (issues.ptr != nullptr && std::strcmp(issues.ptr, "[]") != 0)
    std::cerr << "load issues: " << issues.ptr << "\n";
  if (!args.stats.empty()) {
    std::ofstream out(args.stats, std::ios::binary | std::ios::trunc);
    out << stats.ptr;
    if (!out) {
      std::cerr << "error: cannot write " << args.stats << "\n";
      return 2;
    }
  }
  OwnedString text;
  const mwp_status render = mwp_stats_render(stats.ptr, &text.ptr);
  if (render != MWP_OK) return fail_with(render);
  std::cout << text.ptr;
  return 0;
}

struct VerifyArgs {
  std::string augmented;
  std::string original;
  std::string report;
  std::uint64_t seed = 42;
  int samples = 100;
  double tolerance = 1e-6;
};

int run_verify(const VerifyArgs& args) {
  OwnedString summary;
  const mwp_status status = mwp_verify_files(
      args.augmented.c_str(), args.original.c_str(),
      args.report.empty() ? nullptr : args.report.c_str(), args.seed,
      args.samples, args.tolerance, &summary.ptr);
  if (summary.ptr != nullptr) std::cout << summary.ptr;
  if (status == MWP_OK) return 0;
  std::cerr << "error: " << mwp_last_error() << "\n";
  return status_exit(status);
}

int run_stats(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return 2;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  OwnedString text;
  const mwp_status status = mwp_stats_render(ss.str().c_str(), &text.ptr);
  if (status != MWP_OK) return fail_with(status);
  std::cout << text.ptr;
  return 0;
}

void add_input_options(CLI::App* cmd, ParseArgs& args) {
  cmd->add_option("equations", args.equations,
                  "infix equations like \"x_1 = n_1 + n_2\"");
  cmd->add_option("--prefix", args.prefix,
                  "prefix token stream starting with <UET>")
      ->excludes(cmd->get_option("equations"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equation augmentation toolkit for math word problems"};
  app.require_subcommand(1);

  ParseArgs parse_args;
  CLI::App* parse_cmd =
      app.add_subcommand("parse", "parse equations and print both notations");
  add_input_options(parse_cmd, parse_args);

  ParseArgs canon_args;
  CLI::App* canon_cmd =
      app.add_subcommand("canon", "print the canonical form of equations");
  add_input_options(canon_cmd, canon_args);

  TransformArgs transform_args;
  CLI::App* transform_cmd =
      app.add_subcommand("transform", "apply one control-code rewrite");
  add_input_options(transform_cmd, transform_args.input);
  transform_cmd
      ->add_option("--code,-c", transform_args.code,
                   "control code: orig, add, mul, sol, equ, var")
      ->required();

  AugmentArgs augment_args;
  CLI::App* augment_cmd =
      app.add_subcommand("augment", "build an augmented corpus from a file");
  augment_cmd
      ->add_option("--input,-i", augment_args.input, "input dataset path")
      ->required();
  augment_cmd
      ->add_option("--format,-f", augment_args.format, "input format")
      ->check(CLI::IsMember({"normalized-jsonl", "math23k-json",
                             "draw1k-json", "hmwp-json"}))
      ->capture_default_str();
  augment_cmd
      ->add_option("--output,-o", augment_args.output,
                   "augmented JSONL output path")
      ->required();
  augment_cmd->add_option("--report", augment_args.report,
                          "oracle report JSONL path");
  augment_cmd->add_option("--stats", augment_args.stats,
                          "stats JSON output path");
  augment_cmd->add_option(
      "--codes", augment_args.codes,
      "comma-separated codes to apply (orig is always included)");
  augment_cmd->add_option("--style", augment_args.style, "control-code style")
      ->check(CLI::IsMember({"token", "description"}))
      ->capture_default_str();
  augment_cmd->add_option("--lang", augment_args.lang, "description language")
      ->check(CLI::IsMember({"en", "zh"}))
      ->capture_default_str();
  augment_cmd
      ->add_option("--code-position", augment_args.position,
                   "where the code joins the text")
      ->check(CLI::IsMember({"front", "back"}))
      ->capture_default_str();
  augment_cmd->add_flag("--verify,!--no-verify", augment_args.verify,
                        "oracle-check every rewritten variant");
  augment_cmd->add_option("--jobs,-j", augment_args.jobs, "worker threads")
      ->capture_default_str();
  augment_cmd->add_option("--seed", augment_args.seed, "oracle seed")
      ->capture_default_str();
  augment_cmd
      ->add_option("--samples", augment_args.samples,
                   "oracle samples per check")
      ->capture_default_str();
  augment_cmd
      ->add_option("--tolerance", augment_args.tolerance,
                   "oracle residual tolerance")
      ->capture_default_str();

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "re-check an augmented corpus against its originals");
  verify_cmd
      ->add_option("--augmented,-a", verify_args.augmented,
                   "augmented JSONL path")
      ->required();
  verify_cmd
      ->add_option("--original,-g", verify_args.original,
                   "normalized originals JSONL path")
      ->required();
  verify_cmd->add_option("--report", verify_args.report,
                         "verification report JSONL path");
  verify_cmd->add_option("--seed", verify_args.seed, "oracle seed")
      ->capture_default_str();
  verify_cmd
      ->add_option("--samples", verify_args.samples,
                   "oracle samples per check")
      ->capture_default_str();
  verify_cmd
      ->add_option("--tolerance", verify_args.tolerance,
                   "oracle residual tolerance")
      ->capture_default_str();

  std::string stats_path;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "render a stats JSON file as text");
  stats_cmd->add_option("stats_json", stats_path, "stats JSON path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (parse_cmd->parsed()) {
    if (parse_args.equations.empty() && parse_args.prefix.empty()) {
      std::cerr << "error: no equations given\n";
      return 1;
    }
    return run_parse(parse_args);
  }
  if (canon_cmd->parsed()) {
    if (canon_args.equations.empty() && canon_args.prefix.empty()) {
      std::cerr << "error: no equations given\n";
      return 1;
    }
    return run_canon(canon_args);
  }
  if (transform_cmd->parsed()) {
    if (transform_args.input.equations.empty() &&
        transform_args.input.prefix.empty()) {
      std::cerr << "error: no equations given\n";
      return 1;
    }
    return run_transform(transform_args);
  }
  if (augment_cmd->parsed()) return run_augment(augment_args);
  if (verify_cmd->parsed()) return run_verify(verify_args);
  if (stats_cmd->parsed()) return run_stats(stats_path);
  return 1;
}
