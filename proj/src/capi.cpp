/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mwpaug/ast.hpp"
#include "mwpaug/control_codes.hpp"
#include "mwpaug/oracle.hpp"
#include "mwpaug/parser.hpp"
#include "mwpaug/pipeline.hpp"
#include "mwpaug/transforms.hpp"

struct mwp_eqset {
  mwpaug::EquationSet set;
};

namespace {

thread_local std::string t_last_error;

mwp_status fail(mwp_status status, std::string message) {
  t_last_error = std::move(message);
  return status;
}

char* dup_string(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

mwp_status give_string(std::string_view s, char** out) {
  *out = dup_string(s);
  if (*out == nullptr) return fail(MWP_ERR_INTERNAL, "out of memory");
  return MWP_OK;
}

/// Runs `fn` and maps the library's exception types onto status codes.
template <typename Fn>
mwp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const mwpaug::ParseError& ex) {
    return fail(MWP_ERR_PARSE, ex.what());
  } catch (const mwpaug::MalformedPrefixError& ex) {
    return fail(MWP_ERR_PARSE, ex.what());
  } catch (const mwpaug::IoError& ex) {
    return fail(MWP_ERR_IO, ex.what());
  } catch (const std::bad_alloc&) {
    return fail(MWP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& ex) {
    return fail(MWP_ERR_INTERNAL, ex.what());
  } catch (...) {
    return fail(MWP_ERR_INTERNAL, "unknown failure");
  }
}

std::optional<std::vector<mwpaug::ControlCode>> parse_code_list(
    const char* codes) {
  std::vector<mwpaug::ControlCode> out;
  if (codes == nullptr || *codes == '\0')
    return std::vector<mwpaug::ControlCode>(mwpaug::kAllCodes.begin(),
                                            mwpaug::kAllCodes.end());
  std::string_view rest = codes;
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string_view name = rest.substr(0, comma);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) {
      const std::optional<mwpaug::ControlCode> code =
          mwpaug::code_from_name(name);
      if (!code) return std::nullopt;
      out.push_back(*code);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

mwpaug::OracleConfig make_config(uint64_t seed, int samples,
                                 double tolerance) {
  mwpaug::OracleConfig cfg;
  cfg.seed = seed;
  if (samples > 0) cfg.sample_count = samples;
  if (tolerance > 0) cfg.residual_tol = tolerance;
  return cfg;
}

std::string verdict_detail(const mwpaug::Verdict& verdict) {
  std::string out = verdict.reason;
  if (verdict.witness.givens.empty() && verdict.witness.unknowns.empty())
    return out;
  out += " at";
  for (const auto& [i, v] : verdict.witness.givens)
    out += " n_" + std::to_string(i) + "=" + std::to_string(v);
  for (const auto& [j, v] : verdict.witness.unknowns)
    out += " x_" + std::to_string(j) + "=" + std::to_string(v);
  return out;
}

}  // namespace

extern "C" {

const char* mwp_last_error(void) { return t_last_error.c_str(); }

void mwp_string_free(char* s) { std::free(s); }
void mwp_doubles_free(double* values) { std::free(values); }

mwp_status mwp_eqset_parse(const char* const* equations, size_t count,
                           mwp_eqset** out) {
  if (equations == nullptr || count == 0 || out == nullptr)
    return fail(MWP_ERR_USAGE, "equations and out must be non-null");
  *out = nullptr;
  return guarded([&]() {
    auto set = std::make_unique<mwp_eqset>();
    for (size_t i = 0; i < count; ++i) {
      if (equations[i] == nullptr)
        return fail(MWP_ERR_USAGE, "equation strings must be non-null");
      set->set.equations.push_back(mwpaug::parse_equation(equations[i]));
    }
    *out = set.release();
    return MWP_OK;
  });
}

mwp_status mwp_eqset_from_prefix(const char* prefix, mwp_eqset** out) {
  if (prefix == nullptr || out == nullptr)
    return fail(MWP_ERR_USAGE, "prefix and out must be non-null");
  *out = nullptr;
  return guarded([&]() {
    auto set = std::make_unique<mwp_eqset>();
    set->set = mwpaug::set_from_uet(mwpaug::parse_prefix_string(prefix));
    *out = set.release();
    return MWP_OK;
  });
}

void mwp_eqset_free(mwp_eqset* set) { delete set; }

mwp_status mwp_eqset_canonicalize(const mwp_eqset* set, mwp_eqset** out) {
  if (set == nullptr || out == nullptr)
    return fail(MWP_ERR_USAGE, "set and out must be non-null");
  *out = nullptr;
  return guarded([&]() {
    auto result = std::make_unique<mwp_eqset>();
    result->set = mwpaug::canonicalize(set->set);
    *out = result.release();
    return MWP_OK;
  });
}

mwp_status mwp_eqset_transform(const mwp_eqset* set, const char* code,
                               mwp_eqset** out) {
  if (set == nullptr || code == nullptr || out == nullptr)
    return fail(MWP_ERR_USAGE, "set, code and out must be non-null");
  *out = nullptr;
  const std::optional<mwpaug::ControlCode> parsed =
      mwpaug::code_from_name(code);
  if (!parsed)
    return fail(MWP_ERR_USAGE, std::string("unknown code: ") + code);
  return guarded([&]() {
    mwpaug::TransformOutcome outcome = mwpaug::apply_code(set->set, *parsed);
    if (outcome.result) {
      auto result = std::make_unique<mwp_eqset>();
      result->set = std::move(*outcome.result);
      *out = result.release();
    }
    return MWP_OK;
  });
}

mwp_status mwp_eqset_infix(const mwp_eqset* set, char** out) {
  if (set == nullptr || out == nullptr)
    return fail(MWP_ERR_USAGE, "set and out must be non-null");
  *out = nullptr;
  return guarded([&]() {
    std::string text;
    for (const mwpaug::Equation& eq : set->set.equations) {
      if (!text.empty()) text += '\n';
      text += mwpaug::print_infix(eq);
    }
    return give_string(text, out);
  });
}

mwp_status mwp_eqset_prefix(const mwp_eqset* set, char** out) {
  if (set == nullptr || out == nullptr)
    return fail(MWP_ERR_USAGE, "set and out must be non-null");
  *out = nullptr;
  return guarded([&]() {
    return give_string(
        mwpaug::prefix_string(mwpaug::uet_from_set(set->set)), out);
  });
}

mwp_status mwp_check_equivalent(const mwp_eqset* orig, const mwp_eqset* cand,
                                const char* code, uint64_t seed, int samples,
                                double tolerance, char** verdict_out) {
  if (orig == nullptr || cand == nullptr || code == nullptr ||
      verdict_out == nullptr)
    return fail(MWP_ERR_USAGE, "orig, cand, code and out must be non-null");
  *verdict_out = nullptr;
  const std::optional<mwpaug::ControlCode> parsed =
      mwpaug::code_from_name(code);
  if (!parsed)
    return fail(MWP_ERR_USAGE, std::string("unknown code: ") + code);
  return guarded([&]() {
    const mwpaug::Verdict verdict = mwpaug::verdict_for_code(
        orig->set, cand->set, *parsed, make_config(seed, samples, tolerance));
    const char* name = "inconclusive";
    if (verdict.kind == mwpaug::Verdict::Kind::Equivalent) name = "equivalent";
    if (verdict.kind == mwpaug::Verdict::Kind::NotEquivalent)
      name = "not_equivalent";
    t_last_error = verdict_detail(verdict);
    return give_string(name, verdict_out);
  });
}

mwp_status mwp_solve(const mwp_eqset* set, const double* givens,
                     size_t given_count, double** values_out,
                     size_t* count_out) {
  if (set == nullptr || (givens == nullptr && given_count > 0) ||
      values_out == nullptr || count_out == nullptr)
    return fail(MWP_ERR_USAGE, "set and out parameters must be non-null");
  *values_out = nullptr;
  *count_out = 0;
  return guarded([&]() {
    const mwpaug::SolveResult result = mwpaug::compute_answer(
        set->set, std::vector<double>(givens, givens + given_count),
        mwpaug::OracleConfig{});
    if (result.status != mwpaug::SolveResult::Status::Solved ||
        result.solutions.empty())
      return fail(MWP_ERR_UNSOLVABLE, result.reason.empty()
                                          ? "no solution found"
                                          : result.reason);
    const int m = mwpaug::max_unknown_index(set->set);
    double* values =
        static_cast<double*>(std::malloc(sizeof(double) * static_cast<size_t>(m)));
    if (values == nullptr) return fail(MWP_ERR_INTERNAL, "out of memory");
    const mwpaug::Solution& sol = result.solutions.front();
    for (int j = 1; j <= m; ++j) {
      const auto it = sol.unknowns.find(j);
      values[j - 1] = it == sol.unknowns.end() ? 0.0 : it->second;
    }
    *values_out = values;
    *count_out = static_cast<size_t>(m);
    return MWP_OK;
  });
}

void mwp_augment_options_init(mwp_augment_options* options) {
  if (options == nullptr) return;
  options->codes = nullptr;
  options->style = nullptr;
  options->lang = nullptr;
  options->position = nullptr;
  options->verify = 1;
  options->jobs = 1;
  options->seed = 42;
  options->samples = 0;
  options->tolerance = 0.0;
}

mwp_status mwp_augment_file(const char* input_path, const char* format,
                            const char* output_path, const char* report_path,
                            const mwp_augment_options* options,
                            char** stats_json_out, char** issues_json_out) {
  if (input_path == nullptr || format == nullptr || output_path == nullptr ||
      options == nullptr || stats_json_out == nullptr)
    return fail(MWP_ERR_USAGE,
                "input_path, format, output_path, options and "
                "stats_json_out must be non-null");
  *stats_json_out = nullptr;
  if (issues_json_out != nullptr) *issues_json_out = nullptr;

  const std::optional<mwpaug::InputFormat> input_format =
      mwpaug::input_format_from_name(format);
  if (!input_format)
    return fail(MWP_ERR_USAGE, std::string("unknown format: ") + format);
  const std::optional<std::vector<mwpaug::ControlCode>> codes =
      parse_code_list(options->codes);
  if (!codes)
    return fail(MWP_ERR_USAGE,
                std::string("unknown code in list: ") + options->codes);

  mwpaug::AugmentOptions aug;
  aug.codes = *codes;
  if (options->style != nullptr) {
    const std::string_view style = options->style;
    if (style == "token")
      aug.style = mwpaug::CodeStyle::Token;
    else if (style == "description")
      aug.style = mwpaug::CodeStyle::Description;
    else
      return fail(MWP_ERR_USAGE, "style must be token or description");
  }
  if (options->lang != nullptr) {
    const std::string_view lang = options->lang;
    if (lang == "en")
      aug.lang = mwpaug::Lang::En;
    else if (lang == "zh")
      aug.lang = mwpaug::Lang::Zh;
    else
      return fail(MWP_ERR_USAGE, "lang must be en or zh");
  }
  if (options->position != nullptr) {
    const std::string_view position = options->position;
    if (position == "front")
      aug.position = mwpaug::CodePosition::Front;
    else if (position == "back")
      aug.position = mwpaug::CodePosition::Back;
    else
      return fail(MWP_ERR_USAGE, "position must be front or back");
  }
  aug.verify = options->verify != 0;
  aug.jobs = options->jobs;
  aug.oracle = make_config(options->seed, options->samples,
                           options->tolerance);

  return guarded([&]() {
    const mwpaug::LoadResult loaded =
        mwpaug::load_records(input_path, *input_format);

    if (issues_json_out != nullptr) {
      nlohmann::ordered_json issues = nlohmann::ordered_json::array();
      for (const mwpaug::LoadIssue& issue : loaded.failures) {
        nlohmann::ordered_json j;
        j["kind"] = "failure";
        j["id"] = issue.record_id;
        j["message"] = issue.message;
        issues.push_back(std::move(j));
      }
      for (const mwpaug::LoadIssue& issue : loaded.warnings) {
        nlohmann::ordered_json j;
        j["kind"] = "warning";
        j["id"] = issue.record_id;
        j["message"] = issue.message;
        issues.push_back(std::move(j));
      }
      const mwp_status st = give_string(issues.dump(), issues_json_out);
      if (st != MWP_OK) return st;
    }

    if (loaded.records.empty() && !loaded.failures.empty())
      return fail(MWP_ERR_PARSE,
                  "every record failed to load (" +
                      std::to_string(loaded.failures.size()) +
                      " failures); first: " + loaded.failures.front().message);

    mwpaug::AugmentResult result = mwpaug::augment(loaded.records, aug);
    result.stats.records_failed = loaded.failures.size();
    result.stats.load_warnings = loaded.warnings.size();

    mwpaug::write_augmented_jsonl(output_path, result.augmented);
    if (report_path != nullptr)
      mwpaug::write_report_jsonl(report_path, result.report);

    return give_string(mwpaug::stats_json(result.stats), stats_json_out);
  });
}

mwp_status mwp_verify_files(const char* augmented_path,
                            const char* original_path,
                            const char* report_path, uint64_t seed,
                            int samples, double tolerance,
                            char** summary_json_out) {
  if (augmented_path == nullptr || original_path == nullptr ||
      summary_json_out == nullptr)
    return fail(MWP_ERR_USAGE, "paths and out must be non-null");
  *summary_json_out = nullptr;
  return guarded([&]() {
    const mwpaug::VerifySummary summary = mwpaug::verify_files(
        augmented_path, original_path, make_config(seed, samples, tolerance));
    if (report_path != nullptr)
      mwpaug::write_report_jsonl(report_path, summary.entries);
    const mwp_status st =
        give_string(mwpaug::verify_summary_json(summary), summary_json_out);
    if (st != MWP_OK) return st;
    if (!summary.ok())
      return fail(MWP_ERR_VERIFY,
                  std::to_string(summary.not_equivalent) +
                      " not equivalent, " +
                      std::to_string(summary.id_mismatches) +
                      " id mismatches, " + std::to_string(summary.malformed) +
                      " malformed");
    return MWP_OK;
  });
}

mwp_status mwp_stats_render(const char* stats_json, char** text_out) {
  if (stats_json == nullptr || text_out == nullptr)
    return fail(MWP_ERR_USAGE, "stats_json and text_out must be non-null");
  *text_out = nullptr;
  return guarded([&]() {
    mwpaug::AugStats stats;
    try {
      stats = mwpaug::stats_from_json(stats_json);
    } catch (const std::exception& ex) {
      return fail(MWP_ERR_PARSE,
                  std::string("unreadable stats JSON: ") + ex.what());
    }
    return give_string(mwpaug::stats_report_text(stats), text_out);
  });
}

} /* extern "C" */
