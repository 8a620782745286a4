/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwpaug/ast.hpp"
#include "mwpaug/control_codes.hpp"
#include "mwpaug/oracle.hpp"

namespace mwpaug {

/// File-level failure (unreadable path, unparseable container).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One problem record in normalized form: the text mentions numbers as
/// "n_i" tokens and givens[i-1] holds the value of n_i.
struct MwpRecord {
  std::string id;
  std::string text;
  std::vector<double> givens;
  EquationSet equations;
  std::optional<std::vector<double>> answers;
};

struct TemplatizeResult {
  std::string text;
  std::vector<double> givens;
  EquationSet equations;
  std::vector<std::string> warnings;  // unmatched equation constants
};

/// Replaces numeric mentions in `raw_text` left-to-right by n_1, n_2, ...
/// (each mention gets its own index, duplicates included; "80%" reads as
/// 0.8) and rewrites equation constants that match a mentioned value within
/// 1e-9 to the earliest unused matching index, else the earliest matching
/// one. Unmatched constants stay constants and produce a warning.
///
/// Equation strings are normalized first: unicode ×/÷ become * and /,
/// square brackets become parentheses, "N%" becomes its decimal value, and
/// identifiers other than n_<digits>/x_<digits> are renamed to x_1, x_2,
/// ... by first appearance. ParseError propagates when an equation string
/// is still unreadable after normalization.
TemplatizeResult templatize(std::string_view raw_text,
                            const std::vector<std::string>& raw_equations);

enum class InputFormat : unsigned char {
  NormalizedJsonl,  // {id, text, givens, equations, answers?} per line
  Math23k,          // {id, original_text, equation, ans}
  Draw1k,           // {iIndex, sQuestion, lEquations, lSolutions}
  Hmwp,             // {id, original_text, equation(s), ans}
};

std::string_view input_format_name(InputFormat format);
std::optional<InputFormat> input_format_from_name(std::string_view name);

struct LoadIssue {
  std::string record_id;  // or "line N" when no id could be read
  std::string message;
};

struct LoadResult {
  std::vector<MwpRecord> records;
  std::vector<LoadIssue> failures;  // skipped records
  std::vector<LoadIssue> warnings;  // kept records with caveats
};

/// Reads `path` in the declared format. Raw-dataset records run through
/// templatize; normalized records are taken as-is. Per-record failures are
/// collected in the result, never fatal; only an unreadable file throws
/// IoError.
LoadResult load_records(const std::string& path, InputFormat format);
LoadResult load_records_text(std::string_view text, InputFormat format);

/// Normalized JSONL, one record per line; the round-trip inverse of
/// load_records(NormalizedJsonl).
std::string to_normalized_jsonl(const std::vector<MwpRecord>& records);
void save_records(const std::string& path,
                  const std::vector<MwpRecord>& records);

enum class CodeStyle : unsigned char { Token, Description };
enum class CodePosition : unsigned char { Front, Back };

/// "<add>" for Token style, the language's description string otherwise.
std::string_view render_code(ControlCode code, CodeStyle style, Lang lang);

struct AugmentOptions {
  std::vector<ControlCode> codes{kAllCodes.begin(), kAllCodes.end()};
  CodeStyle style = CodeStyle::Token;
  Lang lang = Lang::En;
  CodePosition position = CodePosition::Front;
  bool verify = true;
  OracleConfig oracle;
  int jobs = 1;
  /// Fault-injection hook for tests: may replace a transform's output
  /// before verification. Return std::nullopt to keep the real output.
  std::function<std::optional<EquationSet>(
      const MwpRecord&, ControlCode, const EquationSet&)>
      corrupt = nullptr;
};

struct AugmentedRecord {
  std::string id;  // source id + "-" + code name
  ControlCode code;
  std::string input;   // code rendering joined to the text by one space
  std::string target;  // prefix serialization of the result's UET
  /// "equivalent" or "inconclusive"; empty when verification was off.
  std::string verified;
};

/// One oracle run during augmentation or standalone verification.
struct ReportEntry {
  std::string id;
  ControlCode code;
  Verdict::Kind verdict;
  std::string detail;  // reason/witness for non-equivalent outcomes
};

struct AugStats {
  std::size_t records_loaded = 0;
  // Load-stage counts; augment() leaves them at zero for the caller to
  // fill in from its LoadResult.
  std::size_t records_failed = 0;
  std::size_t load_warnings = 0;
  std::array<std::size_t, kAllCodes.size()> per_code{};  // indexed by code
  std::size_t emitted_total = 0;
  std::optional<double> multiplier;  // emitted/loaded; empty when no records
  std::size_t inconclusive = 0;
  std::size_t dropped_not_equivalent = 0;
};

struct AugmentResult {
  std::vector<AugmentedRecord> augmented;
  std::vector<ReportEntry> report;
  AugStats stats;
};

/// Canonicalizes each record, fans out the enabled rewrites and renders one
/// AugmentedRecord per surviving variant; the original form is always
/// emitted. With verify on, every rewritten variant is oracle-checked:
/// NotEquivalent outputs are dropped and reported, Inconclusive ones kept
/// but flagged. Output order follows source order then code order
/// regardless of options.jobs.
AugmentResult augment(const std::vector<MwpRecord>& records,
                      const AugmentOptions& options);

std::string stats_report_text(const AugStats& stats);
std::string stats_json(const AugStats& stats);
/// Inverse of stats_json; throws std::runtime_error on malformed input.
AugStats stats_from_json(std::string_view text);

std::string to_augmented_jsonl(const std::vector<AugmentedRecord>& records);
std::string to_report_jsonl(const std::vector<ReportEntry>& entries);
void write_augmented_jsonl(const std::string& path,
                           const std::vector<AugmentedRecord>& records);
void write_report_jsonl(const std::string& path,
                        const std::vector<ReportEntry>& entries);

struct VerifySummary {
  std::size_t checked = 0;
  std::size_t equivalent = 0;
  std::size_t inconclusive = 0;
  std::size_t not_equivalent = 0;
  std::size_t id_mismatches = 0;
  std::size_t malformed = 0;
  std::vector<ReportEntry> entries;

  bool ok() const {
    return not_equivalent == 0 && id_mismatches == 0 && malformed == 0;
  }
};

/// Re-checks an augmented JSONL file against the normalized originals it
/// was built from: every line's target is parsed back and compared to the
/// canonicalized source through the code's oracle mode. Unknown source ids,
/// id/code suffix disagreements and unparseable targets count as failures.
VerifySummary verify_files(const std::string& augmented_path,
                           const std::string& original_path,
                           const OracleConfig& cfg);

std::string verify_summary_json(const VerifySummary& summary);

}  // namespace mwpaug
