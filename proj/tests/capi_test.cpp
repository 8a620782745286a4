/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

/// Owns a C string returned by the library.
struct Str {
  char* ptr = nullptr;
  ~Str() { mwp_string_free(ptr); }
  std::string view() const { return ptr ? std::string(ptr) : std::string(); }
};

/// Owns an equation-set handle.
struct Set {
  mwp_eqset* ptr = nullptr;
  ~Set() { mwp_eqset_free(ptr); }
};

Set parse_one(const char* equation) {
  Set s;
  const char* lines[] = {equation};
  REQUIRE(mwp_eqset_parse(lines, 1, &s.ptr) == MWP_OK);
  return s;
}

struct TempDir {
  std::string path;
  explicit TempDir(std::string name) : path(std::move(name)) {
    REQUIRE(std::system(("rm -rf " + path + " && mkdir -p " + path).c_str()) ==
            0);
  }
  ~TempDir() {
    if (std::system(("rm -rf " + path).c_str()) != 0)
      std::fprintf(stderr, "could not remove %s\n", path.c_str());
  }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.is_open());
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.is_open());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

const char* kTwoRecords =
    R"({"id":"r1","text":"a pot holds n_1 and n_2 .","givens":[6,2],"equations":["x_1 = n_2 + n_1"]})"
    "\n"
    R"({"id":"r2","text":"n_1 times a number is n_2 .","givens":[3,9],"equations":["n_1 * x_1 = n_2"]})"
    "\n";

}  // namespace

TEST_CASE("parse, render and free round-trip") {
  const char* lines[] = {"x_1 = n_1 + n_2", "x_1 - x_2 = 1"};
  Set s;
  REQUIRE(mwp_eqset_parse(lines, 2, &s.ptr) == MWP_OK);

  Str infix;
  REQUIRE(mwp_eqset_infix(s.ptr, &infix.ptr) == MWP_OK);
  CHECK(infix.view() == "x_1 = n_1 + n_2\nx_1 - x_2 = 1");

  Str prefix;
  REQUIRE(mwp_eqset_prefix(s.ptr, &prefix.ptr) == MWP_OK);
  CHECK(prefix.view() == "<UET> = x_1 + n_1 n_2 = - x_1 x_2 1");

  Set back;
  REQUIRE(mwp_eqset_from_prefix(prefix.ptr, &back.ptr) == MWP_OK);
  Str prefix2;
  REQUIRE(mwp_eqset_prefix(back.ptr, &prefix2.ptr) == MWP_OK);
  CHECK(prefix2.view() == prefix.view());
}

TEST_CASE("status codes and last_error describe failures") {
  mwp_eqset* out = nullptr;

  CHECK(mwp_eqset_parse(nullptr, 1, &out) == MWP_ERR_USAGE);
  CHECK(std::string(mwp_last_error()).size() > 0);

  const char* bad[] = {"x_1 = "};
  CHECK(mwp_eqset_parse(bad, 1, &out) == MWP_ERR_PARSE);
  CHECK(std::string(mwp_last_error()).find("offset") != std::string::npos);

  CHECK(mwp_eqset_from_prefix("= x_1 n_1", &out) == MWP_ERR_PARSE);

  Set s = parse_one("x_1 = n_1 + n_2");
  CHECK(mwp_eqset_transform(s.ptr, "bogus", &out) == MWP_ERR_USAGE);
  CHECK(mwp_eqset_transform(nullptr, "add", &out) == MWP_ERR_USAGE);
  CHECK(mwp_eqset_infix(s.ptr, nullptr) == MWP_ERR_USAGE);
}

TEST_CASE("canonicalize and transform through the handle API") {
  Set s = parse_one("x_1 = n_2 + n_1");
  Set canon;
  REQUIRE(mwp_eqset_canonicalize(s.ptr, &canon.ptr) == MWP_OK);
  Str text;
  REQUIRE(mwp_eqset_infix(canon.ptr, &text.ptr) == MWP_OK);
  CHECK(text.view() == "x_1 = n_1 + n_2");

  mwp_eqset* swapped = nullptr;
  REQUIRE(mwp_eqset_transform(canon.ptr, "add", &swapped) == MWP_OK);
  REQUIRE(swapped != nullptr);
  Str after;
  REQUIRE(mwp_eqset_infix(swapped, &after.ptr) == MWP_OK);
  CHECK(after.view() == "x_1 = n_2 + n_1");
  mwp_eqset_free(swapped);

  // Token spelling works and an identity rewrite returns NULL.
  mwp_eqset* unchanged = nullptr;
  REQUIRE(mwp_eqset_transform(canon.ptr, "<mul>", &unchanged) == MWP_OK);
  CHECK(unchanged == nullptr);
}

TEST_CASE("equivalence checking reports verdicts and witnesses") {
  Set orig = parse_one("x_1 = n_1 + n_2");
  Set good = parse_one("x_1 = n_2 + n_1");
  Set bad = parse_one("x_1 = n_1 - n_2");

  Str verdict;
  REQUIRE(mwp_check_equivalent(orig.ptr, good.ptr, "add", 42, 0, 0,
                               &verdict.ptr) == MWP_OK);
  CHECK(verdict.view() == "equivalent");

  Str verdict2;
  REQUIRE(mwp_check_equivalent(orig.ptr, bad.ptr, "add", 42, 0, 0,
                               &verdict2.ptr) == MWP_OK);
  CHECK(verdict2.view() == "not_equivalent");
  CHECK(std::string(mwp_last_error()).find("n_1") != std::string::npos);

  CHECK(mwp_check_equivalent(orig.ptr, bad.ptr, "nope", 42, 0, 0,
                             &verdict2.ptr) == MWP_ERR_USAGE);
}

TEST_CASE("solving returns the unknown values in index order") {
  Set s;
  const char* lines[] = {"x_1 + x_2 = n_1", "x_1 - x_2 = n_2"};
  REQUIRE(mwp_eqset_parse(lines, 2, &s.ptr) == MWP_OK);
  const double givens[] = {10.0, 2.0};
  double* values = nullptr;
  size_t count = 0;
  REQUIRE(mwp_solve(s.ptr, givens, 2, &values, &count) == MWP_OK);
  REQUIRE(count == 2);
  CHECK(values[0] == doctest::Approx(6.0));
  CHECK(values[1] == doctest::Approx(4.0));
  mwp_doubles_free(values);

  Set singular = parse_one("n_1 * x_1 = n_2");
  const double zeros[] = {0.0, 5.0};
  CHECK(mwp_solve(singular.ptr, zeros, 2, &values, &count) ==
        MWP_ERR_UNSOLVABLE);
}

TEST_CASE("file augmentation writes outputs, stats and reports") {
  TempDir dir("capi_aug_tmp");
  write_text(dir.file("in.jsonl"), kTwoRecords);

  mwp_augment_options options;
  mwp_augment_options_init(&options);
  CHECK(options.verify != 0);
  CHECK(options.seed == 42);

  Str stats;
  Str issues;
  REQUIRE(mwp_augment_file(dir.file("in.jsonl").c_str(), "normalized-jsonl",
                           dir.file("out.jsonl").c_str(),
                           dir.file("report.jsonl").c_str(), &options,
                           &stats.ptr, &issues.ptr) == MWP_OK);
  CHECK(issues.view() == "[]");

  const json stats_json = json::parse(stats.view());
  CHECK(stats_json.at("records_loaded") == 2);
  CHECK(stats_json.at("emitted_total") >= 4);
  CHECK(stats_json.at("dropped_not_equivalent") == 0);

  const std::string out_text = read_text(dir.file("out.jsonl"));
  CHECK(out_text.find("\"r1-orig\"") != std::string::npos);
  CHECK(out_text.find("\"r1-add\"") != std::string::npos);
  CHECK(out_text.find("\"r2-sol\"") != std::string::npos);

  Str rendered;
  REQUIRE(mwp_stats_render(stats.ptr, &rendered.ptr) == MWP_OK);
  CHECK(rendered.view().find("records loaded") != std::string::npos);

  Str summary;
  REQUIRE(mwp_verify_files(dir.file("out.jsonl").c_str(),
                           dir.file("in.jsonl").c_str(),
                           dir.file("verify.jsonl").c_str(), 42, 0, 0,
                           &summary.ptr) == MWP_OK);
  const json sj = json::parse(summary.view());
  CHECK(sj.at("ok") == true);
  CHECK(sj.at("not_equivalent") == 0);
}

TEST_CASE("tampered augmented files fail verification with a summary") {
  TempDir dir("capi_verify_tmp");
  write_text(dir.file("in.jsonl"), kTwoRecords);

  mwp_augment_options options;
  mwp_augment_options_init(&options);
  Str stats;
  REQUIRE(mwp_augment_file(dir.file("in.jsonl").c_str(), "normalized-jsonl",
                           dir.file("out.jsonl").c_str(), nullptr, &options,
                           &stats.ptr, nullptr) == MWP_OK);

  std::string tampered = read_text(dir.file("out.jsonl"));
  const std::size_t plus = tampered.find("+ n_1 n_2");
  REQUIRE(plus != std::string::npos);
  tampered.replace(plus, 1, "-");
  write_text(dir.file("out.jsonl"), tampered);

  Str summary;
  CHECK(mwp_verify_files(dir.file("out.jsonl").c_str(),
                         dir.file("in.jsonl").c_str(), nullptr, 42, 0, 0,
                         &summary.ptr) == MWP_ERR_VERIFY);
  REQUIRE(summary.ptr != nullptr);
  const json sj = json::parse(summary.view());
  CHECK(sj.at("ok") == false);
  CHECK(sj.at("not_equivalent") >= 1);
  CHECK(std::string(mwp_last_error()).find("not equivalent") !=
        std::string::npos);
}

TEST_CASE("augmentation rejects unusable arguments up front") {
  TempDir dir("capi_usage_tmp");
  write_text(dir.file("in.jsonl"), kTwoRecords);
  mwp_augment_options options;
  mwp_augment_options_init(&options);
  Str stats;

  CHECK(mwp_augment_file(dir.file("in.jsonl").c_str(), "csv",
                         dir.file("out.jsonl").c_str(), nullptr, &options,
                         &stats.ptr, nullptr) == MWP_ERR_USAGE);

  options.codes = "add,unknowncode";
  CHECK(mwp_augment_file(dir.file("in.jsonl").c_str(), "normalized-jsonl",
                         dir.file("out.jsonl").c_str(), nullptr, &options,
                         &stats.ptr, nullptr) == MWP_ERR_USAGE);
  options.codes = nullptr;

  CHECK(mwp_augment_file(dir.file("absent.jsonl").c_str(), "normalized-jsonl",
                         dir.file("out.jsonl").c_str(), nullptr, &options,
                         &stats.ptr, nullptr) == MWP_ERR_IO);
}

TEST_CASE("a file whose records all fail to load writes nothing") {
  TempDir dir("capi_allfail_tmp");
  write_text(dir.file("in.jsonl"), "{\"id\":\"z\",\"text\":\"t\"}\n");
  mwp_augment_options options;
  mwp_augment_options_init(&options);
  Str stats;
  Str issues;
  CHECK(mwp_augment_file(dir.file("in.jsonl").c_str(), "normalized-jsonl",
                         dir.file("out.jsonl").c_str(), nullptr, &options,
                         &stats.ptr, &issues.ptr) == MWP_ERR_PARSE);
  CHECK(issues.ptr != nullptr);
  const json arr = json::parse(issues.view());
  REQUIRE(arr.is_array());
  CHECK(arr.size() == 1);
  CHECK(arr[0].at("id") == "z");
  std::ifstream out(dir.file("out.jsonl"));
  CHECK(!out.is_open());
}

TEST_CASE("augment options filter codes end to end") {
  TempDir dir("capi_codes_tmp");
  write_text(dir.file("in.jsonl"), kTwoRecords);
  mwp_augment_options options;
  mwp_augment_options_init(&options);
  options.codes = "add,mul";
  Str stats;
  REQUIRE(mwp_augment_file(dir.file("in.jsonl").c_str(), "normalized-jsonl",
                           dir.file("out.jsonl").c_str(), nullptr, &options,
                           &stats.ptr, nullptr) == MWP_OK);
  const std::string out_text = read_text(dir.file("out.jsonl"));
  for (std::string_view line : {"-sol\"", "-equ\"", "-var\""})
    CHECK(out_text.find(line) == std::string::npos);
  CHECK(out_text.find("-orig\"") != std::string::npos);
  CHECK(out_text.find("-add\"") != std::string::npos);
}
