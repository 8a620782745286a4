/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mwpaug/parser.hpp"
#include "mwpaug/pipeline.hpp"
#include "mwpaug/transforms.hpp"

namespace mwpaug {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

/// Spans of every top-level {...} object, tolerant of array wrappers,
/// commas, or blank-line separation between objects.
std::vector<std::string_view> scan_json_objects(std::string_view text) {
  std::vector<std::string_view> out;
  bool in_string = false;
  bool escaped = false;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      if (depth == 0) start = i;
      ++depth;
    } else if (c == '}') {
      if (depth > 0 && --depth == 0)
        out.push_back(text.substr(start, i - start + 1));
    }
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return out;
}

bool is_blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string trimmed(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<double> to_double_full(const std::string& s) {
  if (s.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    return std::nullopt;
  return v;
}

/// Best-effort numeric read of answer annotations: "20", "20%", "(3/8)".
std::optional<double> parse_answer_text(std::string_view raw) {
  std::string s = trimmed(raw);
  if (s.empty()) return std::nullopt;
  if (s.back() == '%') {
    const std::optional<double> v =
        to_double_full(s.substr(0, s.size() - 1));
    if (v) return *v / 100.0;
    return std::nullopt;
  }
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const std::optional<double> a = to_double_full(s.substr(0, slash));
    const std::optional<double> b = to_double_full(s.substr(slash + 1));
    if (a && b && *b != 0.0) return *a / *b;
    return std::nullopt;
  }
  return to_double_full(s);
}

std::optional<double> parse_number_like(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_answer_text(v.get<std::string>());
  return std::nullopt;
}

std::optional<std::string> field_as_id(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return std::nullopt;
}

std::optional<std::string> first_string_field(
    const json& j, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    if (j.contains(key) && j.at(key).is_string())
      return j.at(key).get<std::string>();
  }
  return std::nullopt;
}

/// True when `text` contains "n_<index>" as a whole token.
bool has_given_token(std::string_view text, int index) {
  const std::string token = "n_" + std::to_string(index);
  std::size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string_view::npos) {
    const std::size_t end = pos + token.size();
    if (end >= text.size() ||
        !std::isdigit(static_cast<unsigned char>(text[end])))
      return true;
    ++pos;
  }
  return false;
}

void check_invariants(const MwpRecord& rec) {
  const int max_given = max_given_index(rec.equations);
  if (max_given > static_cast<int>(rec.givens.size()))
    throw std::runtime_error(
        "equation references n_" + std::to_string(max_given) + " but only " +
        std::to_string(rec.givens.size()) + " givens are present");
  const std::vector<std::string> issues = validate(rec.equations);
  if (!issues.empty()) throw std::runtime_error(issues.front());
}

void warn_missing_tokens(const MwpRecord& rec, std::vector<LoadIssue>& out) {
  for (int i : given_indices(rec.equations)) {
    if (!has_given_token(rec.text, i))
      out.push_back({rec.id, "text lacks token n_" + std::to_string(i)});
  }
}

LoadResult load_normalized(std::string_view text) {
  LoadResult out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::string rid = "line " + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      if (!j.is_object()) throw std::runtime_error("not a JSON object");
      MwpRecord rec;
      const std::optional<std::string> id = field_as_id(j, "id");
      if (!id) throw std::runtime_error("missing id");
      rec.id = *id;
      rid = rec.id;
      rec.text = j.at("text").get<std::string>();
      for (const json& g : j.at("givens")) rec.givens.push_back(g.get<double>());
      for (const json& e : j.at("equations"))
        rec.equations.equations.push_back(
            parse_equation(e.get<std::string>()));
      if (j.contains("answers") && j.at("answers").is_array()) {
        std::vector<double> answers;
        for (const json& a : j.at("answers")) answers.push_back(a.get<double>());
        rec.answers = std::move(answers);
      }
      check_invariants(rec);
      warn_missing_tokens(rec, out.warnings);
      out.records.push_back(std::move(rec));
    } catch (const std::exception& ex) {
      out.failures.push_back({rid, ex.what()});
    }
  }
  return out;
}

std::vector<std::string> equation_strings(const json& j, InputFormat format) {
  std::vector<std::string> raw;
  if (format == InputFormat::Draw1k) {
    for (const json& e : j.at("lEquations")) raw.push_back(e.get<std::string>());
  } else {
    raw.push_back(j.at("equation").get<std::string>());
  }
  std::vector<std::string> out;
  for (std::string& s : raw) {
    // Full-width '；' to ';' so both separators split.
    for (std::size_t p = 0; (p = s.find("\xEF\xBC\x9B", p)) != std::string::npos;)
      s.replace(p, 3, ";");
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t semi = s.find(';', pos);
      if (semi == std::string::npos) semi = s.size();
      std::string piece = trimmed(std::string_view(s).substr(pos, semi - pos));
      if (!piece.empty()) out.push_back(std::move(piece));
      if (semi == s.size()) break;
      pos = semi + 1;
    }
  }
  if (out.empty()) throw std::runtime_error("no equations in record");
  for (std::string& piece : out)
    if (piece.find('=') == std::string::npos) piece = "x=" + piece;
  return out;
}

std::optional<std::vector<double>> read_answers(const json& j,
                                                InputFormat format) {
  std::vector<double> out;
  const char* key = format == InputFormat::Draw1k ? "lSolutions" : "ans";
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (v.is_array()) {
    for (const json& a : v) {
      const std::optional<double> d = parse_number_like(a);
      if (d) out.push_back(*d);
    }
  } else {
    const std::optional<double> d = parse_number_like(v);
    if (d) out.push_back(*d);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

LoadResult load_raw(std::string_view text, InputFormat format) {
  LoadResult out;
  std::size_t ordinal = 0;
  for (std::string_view span : scan_json_objects(text)) {
    ++ordinal;
    std::string rid = "record " + std::to_string(ordinal);
    try {
      const json j = json::parse(span);
      std::optional<std::string> id = field_as_id(j, "id");
      if (!id) id = field_as_id(j, "iIndex");
      const std::string record_id = id ? *id : std::to_string(ordinal);
      rid = record_id;
      const std::optional<std::string> question = first_string_field(
          j, {"original_text", "text", "sQuestion", "segmented_text"});
      if (!question) throw std::runtime_error("missing problem text");
      const std::vector<std::string> eqs = equation_strings(j, format);
      TemplatizeResult t = templatize(*question, eqs);
      MwpRecord rec{record_id, std::move(t.text), std::move(t.givens),
                    std::move(t.equations), read_answers(j, format)};
      check_invariants(rec);
      for (std::string& w : t.warnings)
        out.warnings.push_back({record_id, std::move(w)});
      out.records.push_back(std::move(rec));
    } catch (const std::exception& ex) {
      out.failures.push_back({rid, ex.what()});
    }
  }
  return out;
}

std::string_view verdict_kind_name(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Equivalent:
      return "equivalent";
    case Verdict::Kind::NotEquivalent:
      return "not_equivalent";
    case Verdict::Kind::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace

std::string_view input_format_name(InputFormat format) {
  switch (format) {
    case InputFormat::NormalizedJsonl:
      return "normalized-jsonl";
    case InputFormat::Math23k:
      return "math23k-json";
    case InputFormat::Draw1k:
      return "draw1k-json";
    case InputFormat::Hmwp:
      return "hmwp-json";
  }
  return "normalized-jsonl";
}

std::optional<InputFormat> input_format_from_name(std::string_view name) {
  if (name == "normalized-jsonl") return InputFormat::NormalizedJsonl;
  if (name == "math23k-json") return InputFormat::Math23k;
  if (name == "draw1k-json") return InputFormat::Draw1k;
  if (name == "hmwp-json") return InputFormat::Hmwp;
  return std::nullopt;
}

LoadResult load_records_text(std::string_view text, InputFormat format) {
  if (format == InputFormat::NormalizedJsonl) return load_normalized(text);
  return load_raw(text, format);
}

LoadResult load_records(const std::string& path, InputFormat format) {
  return load_records_text(read_file(path), format);
}

std::string to_normalized_jsonl(const std::vector<MwpRecord>& records) {
  std::string out;
  for (const MwpRecord& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["text"] = r.text;
    j["givens"] = r.givens;
    ordered_json eqs = ordered_json::array();
    for (const Equation& e : r.equations.equations) eqs.push_back(print_infix(e));
    j["equations"] = std::move(eqs);
    if (r.answers) j["answers"] = *r.answers;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_records(const std::string& path,
                  const std::vector<MwpRecord>& records) {
  write_file(path, to_normalized_jsonl(records));
}

std::string stats_json(const AugStats& stats) {
  ordered_json j;
  j["records_loaded"] = stats.records_loaded;
  j["records_failed"] = stats.records_failed;
  j["load_warnings"] = stats.load_warnings;
  j["emitted_total"] = stats.emitted_total;
  if (stats.multiplier)
    j["multiplier"] = *stats.multiplier;
  else
    j["multiplier"] = nullptr;
  j["inconclusive"] = stats.inconclusive;
  j["dropped_not_equivalent"] = stats.dropped_not_equivalent;
  ordered_json per_code;
  for (ControlCode code : kAllCodes)
    per_code[std::string(code_name(code))] =
        stats.per_code[static_cast<std::size_t>(code)];
  j["per_code"] = std::move(per_code);
  return j.dump(2) + "\n";
}

AugStats stats_from_json(std::string_view text) {
  const json j = json::parse(text);
  AugStats s;
  s.records_loaded = j.at("records_loaded").get<std::size_t>();
  s.records_failed = j.at("records_failed").get<std::size_t>();
  s.load_warnings = j.at("load_warnings").get<std::size_t>();
  s.emitted_total = j.at("emitted_total").get<std::size_t>();
  if (!j.at("multiplier").is_null())
    s.multiplier = j.at("multiplier").get<double>();
  s.inconclusive = j.at("inconclusive").get<std::size_t>();
  s.dropped_not_equivalent = j.at("dropped_not_equivalent").get<std::size_t>();
  const json& per_code = j.at("per_code");
  for (ControlCode code : kAllCodes) {
    const std::string key(code_name(code));
    if (per_code.contains(key))
      s.per_code[static_cast<std::size_t>(code)] =
          per_code.at(key).get<std::size_t>();
  }
  return s;
}

std::string to_augmented_jsonl(const std::vector<AugmentedRecord>& records) {
  std::string out;
  for (const AugmentedRecord& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["code"] = std::string(code_name(r.code));
    j["input"] = r.input;
    j["target"] = r.target;
    if (!r.verified.empty()) j["verified"] = r.verified;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string to_report_jsonl(const std::vector<ReportEntry>& entries) {
  std::string out;
  for (const ReportEntry& e : entries) {
    ordered_json j;
    j["id"] = e.id;
    j["code"] = std::string(code_name(e.code));
    j["verdict"] = std::string(verdict_kind_name(e.verdict));
    j["detail"] = e.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_augmented_jsonl(const std::string& path,
                           const std::vector<AugmentedRecord>& records) {
  write_file(path, to_augmented_jsonl(records));
}

void write_report_jsonl(const std::string& path,
                        const std::vector<ReportEntry>& entries) {
  write_file(path, to_report_jsonl(entries));
}

std::string verify_summary_json(const VerifySummary& summary) {
  ordered_json j;
  j["checked"] = summary.checked;
  j["equivalent"] = summary.equivalent;
  j["inconclusive"] = summary.inconclusive;
  j["not_equivalent"] = summary.not_equivalent;
  j["id_mismatches"] = summary.id_mismatches;
  j["malformed"] = summary.malformed;
  j["ok"] = summary.ok();
  return j.dump(2) + "\n";
}

VerifySummary verify_files(const std::string& augmented_path,
                           const std::string& original_path,
                           const OracleConfig& cfg) {
  const LoadResult originals =
      load_records_text(read_file(original_path), InputFormat::NormalizedJsonl);
  std::map<std::string, EquationSet> canonical;
  for (const MwpRecord& r : originals.records)
    canonical.emplace(r.id, canonicalize(r.equations));

  VerifySummary out;
  std::size_t line_no = 0;
  const std::string augmented_text = read_file(augmented_path);
  for (std::string_view line : split_lines(augmented_text)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++out.checked;
    std::string aid = "line " + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      aid = j.at("id").get<std::string>();
      const std::string code_str = j.at("code").get<std::string>();
      const std::optional<ControlCode> code = code_from_name(code_str);
      if (!code) throw std::runtime_error("unknown code " + code_str);

      const std::string suffix = "-" + code_str;
      if (aid.size() <= suffix.size() ||
          aid.compare(aid.size() - suffix.size(), suffix.size(), suffix) !=
              0) {
        ++out.id_mismatches;
        out.entries.push_back({aid, *code, Verdict::Kind::NotEquivalent,
                               "id does not end in " + suffix});
        continue;
      }
      const std::string source_id = aid.substr(0, aid.size() - suffix.size());
      const auto it = canonical.find(source_id);
      if (it == canonical.end()) {
        ++out.id_mismatches;
        out.entries.push_back({aid, *code, Verdict::Kind::NotEquivalent,
                               "no source record " + source_id});
        continue;
      }

      EquationSet cand;
      try {
        cand = set_from_uet(
            parse_prefix_string(j.at("target").get<std::string>()));
      } catch (const MalformedPrefixError& ex) {
        ++out.malformed;
        out.entries.push_back({aid, *code, Verdict::Kind::NotEquivalent,
                               std::string("malformed target: ") + ex.what()});
        continue;
      }

      OracleConfig derived = cfg;
      derived.seed = derive_seed(cfg.seed, source_id, *code);
      const Verdict v = verdict_for_code(it->second, cand, *code, derived);
      out.entries.push_back({aid, *code, v.kind, v.reason});
      switch (v.kind) {
        case Verdict::Kind::Equivalent:
          ++out.equivalent;
          break;
        case Verdict::Kind::Inconclusive:
          ++out.inconclusive;
          break;
        case Verdict::Kind::NotEquivalent:
          ++out.not_equivalent;
          break;
      }
    } catch (const std::exception& ex) {
      ++out.malformed;
      out.entries.push_back({aid, ControlCode::Orig,
                             Verdict::Kind::NotEquivalent,
                             std::string("malformed line: ") + ex.what()});
    }
  }
  return out;
}

}  // namespace mwpaug
