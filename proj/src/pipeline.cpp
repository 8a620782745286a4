/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "mwpaug/parser.hpp"
#include "mwpaug/rational.hpp"
#include "mwpaug/transforms.hpp"

namespace mwpaug {

namespace {

// A constant in an equation matches a text mention when the values agree
// this closely.
constexpr double kConstMatchTol = 1e-9;

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_word(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// A digit run starts a numeric mention only on a word boundary, so the
/// "1" of "x1" is never read as a number.
bool starts_number(std::string_view text, std::size_t i) {
  const char c = text[i];
  const bool numeric_start =
      is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]));
  if (!numeric_start) return false;
  if (i > 0 && (is_word(text[i - 1]) || text[i - 1] == '.')) return false;
  return true;
}

/// Consumes the number starting at `i`: digits with optional thousands
/// commas, optional fraction, optional trailing '%'. Returns one past the
/// end and the exact value (percent already folded in), or nullopt when the
/// literal does not fit the decimal grammar.
std::pair<std::size_t, std::optional<Rational>> consume_number(
    std::string_view text, std::size_t i) {
  std::size_t j = i;
  std::string body;
  while (j < text.size() && is_digit(text[j])) body.push_back(text[j++]);
  while (j + 3 < text.size() && text[j] == ',' && is_digit(text[j + 1]) &&
         is_digit(text[j + 2]) && is_digit(text[j + 3]) &&
         !(j + 4 < text.size() && is_digit(text[j + 4]))) {
    body.append(text.substr(j + 1, 3));
    j += 4;
  }
  if (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
      is_digit(text[j + 1])) {
    body.push_back(text[j++]);
    while (j < text.size() && is_digit(text[j])) body.push_back(text[j++]);
  }
  std::optional<Rational> value = Rational::from_decimal(body);
  if (value && j < text.size() && text[j] == '%') {
    ++j;
    value = *value * Rational(1, 100);
  }
  return {j, value};
}

/// n_<digits> or x_<digits>, underscore optional.
bool is_canonical_var(std::string_view name) {
  if (name.size() < 2) return false;
  if (name[0] != 'n' && name[0] != 'x') return false;
  std::size_t i = name[1] == '_' ? 2 : 1;
  if (i >= name.size()) return false;
  for (; i < name.size(); ++i)
    if (!is_digit(name[i])) return false;
  return true;
}

/// Byte-level cleanup of a raw equation string: unicode ×/÷ to * and /,
/// square brackets to parentheses, "N%" to its exact decimal value.
std::string normalize_equation_text(std::string_view raw) {
  std::string s;
  s.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    const unsigned char c = static_cast<unsigned char>(raw[i]);
    if (c == 0xC3 && i + 1 < raw.size()) {
      const unsigned char d = static_cast<unsigned char>(raw[i + 1]);
      if (d == 0x97) {  // ×
        s += '*';
        i += 2;
        continue;
      }
      if (d == 0xB7) {  // ÷
        s += '/';
        i += 2;
        continue;
      }
    }
    if (raw[i] == '[') {
      s += '(';
      ++i;
      continue;
    }
    if (raw[i] == ']') {
      s += ')';
      ++i;
      continue;
    }
    s += raw[i];
    ++i;
  }

  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (starts_number(s, i)) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j < s.size() && s[j] == '.' && j + 1 < s.size() &&
          is_digit(s[j + 1])) {
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
      }
      if (j < s.size() && s[j] == '%') {
        std::optional<Rational> r =
            Rational::from_decimal(s.substr(i, j - i));
        if (r) {
          out += (*r * Rational(1, 100)).to_decimal();
          i = j + 1;
          continue;
        }
      }
      out.append(s, i, j - i);
      i = j;
      continue;
    }
    out += s[i];
    ++i;
  }
  return out;
}

/// Renames every identifier that is not already n_<k>/x_<k> form to x_1,
/// x_2, ... by first appearance across the equation list.
std::vector<std::string> rename_identifiers(
    const std::vector<std::string>& eqs) {
  std::map<std::string, int, std::less<>> names;
  int next = 1;
  std::vector<std::string> out;
  out.reserve(eqs.size());
  for (const std::string& eq : eqs) {
    std::string r;
    r.reserve(eq.size());
    for (std::size_t i = 0; i < eq.size();) {
      const char c = eq[i];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < eq.size() && is_word(eq[j])) ++j;
        const std::string_view name(eq.data() + i, j - i);
        if (is_canonical_var(name)) {
          r.append(name);
        } else {
          auto it = names.find(name);
          if (it == names.end())
            it = names.emplace(std::string(name), next++).first;
          r += "x_";
          r += std::to_string(it->second);
        }
        i = j;
        continue;
      }
      r += c;
      ++i;
    }
    out.push_back(std::move(r));
  }
  return out;
}

ExprPtr substitute_constants(const ExprPtr& e,
                             const std::vector<double>& givens,
                             std::vector<char>& used,
                             std::vector<std::string>& warnings) {
  if (const ConstantNode* c = e->constant()) {
    const double v = c->value.to_double();
    int unused_hit = -1;
    int any_hit = -1;
    for (std::size_t i = 0; i < givens.size(); ++i) {
      if (std::abs(v - givens[i]) > kConstMatchTol) continue;
      if (any_hit < 0) any_hit = static_cast<int>(i);
      if (!used[i]) {
        unused_hit = static_cast<int>(i);
        break;  // earliest unused wins
      }
    }
    const int hit = unused_hit >= 0 ? unused_hit : any_hit;
    if (hit < 0) {
      warnings.push_back("constant " + c->value.to_decimal() +
                         " has no matching number mention");
      return e;
    }
    used[static_cast<std::size_t>(hit)] = 1;
    return make_given(hit + 1);
  }
  if (const BinaryNode* b = e->binary()) {
    ExprPtr left = substitute_constants(b->left, givens, used, warnings);
    ExprPtr right = substitute_constants(b->right, givens, used, warnings);
    return make_binary(b->op, std::move(left), std::move(right));
  }
  return e;
}

std::string format_witness(const Bindings& b) {
  std::ostringstream os;
  os << std::setprecision(17);
  bool first = true;
  for (const auto& [i, v] : b.givens) {
    os << (first ? "" : " ") << "n_" << i << "=" << v;
    first = false;
  }
  for (const auto& [j, v] : b.unknowns) {
    os << (first ? "" : " ") << "x_" << j << "=" << v;
    first = false;
  }
  return os.str();
}

struct PerRecord {
  std::vector<AugmentedRecord> records;
  std::vector<ReportEntry> report;
  std::array<std::size_t, kAllCodes.size()> per_code{};
  std::size_t inconclusive = 0;
  std::size_t dropped = 0;
};

PerRecord process_record(const MwpRecord& rec, const AugmentOptions& opt,
                         const std::vector<ControlCode>& codes) {
  PerRecord out;
  const EquationSet canonical = canonicalize(rec.equations);
  for (GeneratedVariant& variant : generate_all(canonical, codes)) {
    EquationSet set = std::move(variant.set);
    if (variant.code != ControlCode::Orig && opt.corrupt) {
      if (std::optional<EquationSet> c = opt.corrupt(rec, variant.code, set))
        set = std::move(*c);
    }
    const std::string aug_id =
        rec.id + "-" + std::string(code_name(variant.code));
    std::string verified;
    if (opt.verify) {
      if (variant.code == ControlCode::Orig) {
        verified = "equivalent";  // the canonical source itself
      } else {
        OracleConfig cfg = opt.oracle;
        cfg.seed = derive_seed(opt.oracle.seed, rec.id, variant.code);
        const Verdict verdict =
            verdict_for_code(canonical, set, variant.code, cfg);
        std::string detail = verdict.reason;
        if (!verdict.witness.givens.empty() ||
            !verdict.witness.unknowns.empty()) {
          detail += detail.empty() ? "at " : " at ";
          detail += format_witness(verdict.witness);
        }
        out.report.push_back({aug_id, variant.code, verdict.kind, detail});
        if (verdict.kind == Verdict::Kind::NotEquivalent) {
          ++out.dropped;
          continue;
        }
        if (verdict.kind == Verdict::Kind::Inconclusive) {
          ++out.inconclusive;
          verified = "inconclusive";
        } else {
          verified = "equivalent";
        }
      }
    }
    const std::string_view rendering =
        render_code(variant.code, opt.style, opt.lang);
    std::string input;
    if (opt.position == CodePosition::Front) {
      input = std::string(rendering) + " " + rec.text;
    } else {
      input = rec.text + " " + std::string(rendering);
    }
    AugmentedRecord ar;
    ar.id = aug_id;
    ar.code = variant.code;
    ar.input = std::move(input);
    ar.target = prefix_string(uet_from_set(set));
    ar.verified = std::move(verified);
    ++out.per_code[static_cast<std::size_t>(variant.code)];
    out.records.push_back(std::move(ar));
  }
  return out;
}

}  // namespace

TemplatizeResult templatize(std::string_view raw_text,
                            const std::vector<std::string>& raw_equations) {
  TemplatizeResult out;
  std::string templated;
  templated.reserve(raw_text.size());
  for (std::size_t i = 0; i < raw_text.size();) {
    if (starts_number(raw_text, i)) {
      const auto [j, value] = consume_number(raw_text, i);
      if (value) {
        out.givens.push_back(value->to_double());
        templated += "n_";
        templated += std::to_string(out.givens.size());
        i = j;
        continue;
      }
    }
    templated += raw_text[i];
    ++i;
  }
  out.text = std::move(templated);

  std::vector<std::string> normalized;
  normalized.reserve(raw_equations.size());
  for (const std::string& eq : raw_equations)
    normalized.push_back(normalize_equation_text(eq));
  normalized = rename_identifiers(normalized);

  std::vector<char> used(out.givens.size(), 0);
  for (const std::string& eq_text : normalized) {
    Equation eq = parse_equation(eq_text);
    eq.lhs = substitute_constants(eq.lhs, out.givens, used, out.warnings);
    eq.rhs = substitute_constants(eq.rhs, out.givens, used, out.warnings);
    out.equations.equations.push_back(std::move(eq));
  }
  return out;
}

std::string_view render_code(ControlCode code, CodeStyle style, Lang lang) {
  return style == CodeStyle::Token ? code_token(code)
                                   : code_description(code, lang);
}

AugmentResult augment(const std::vector<MwpRecord>& records,
                      const AugmentOptions& options) {
  const std::vector<ControlCode>& codes = options.codes;
  std::vector<PerRecord> slots(records.size());
  const std::size_t workers = std::min<std::size_t>(
      records.size(),
      static_cast<std::size_t>(std::max(1, options.jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i)
      slots[i] = process_record(records[i], options, codes);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= records.size()) return;
        slots[i] = process_record(records[i], options, codes);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  AugmentResult out;
  out.stats.records_loaded = records.size();
  for (PerRecord& slot : slots) {
    for (AugmentedRecord& r : slot.records)
      out.augmented.push_back(std::move(r));
    for (ReportEntry& e : slot.report) out.report.push_back(std::move(e));
    for (std::size_t c = 0; c < slot.per_code.size(); ++c)
      out.stats.per_code[c] += slot.per_code[c];
    out.stats.inconclusive += slot.inconclusive;
    out.stats.dropped_not_equivalent += slot.dropped;
  }
  out.stats.emitted_total = out.augmented.size();
  if (!records.empty())
    out.stats.multiplier = static_cast<double>(out.stats.emitted_total) /
                           static_cast<double>(records.size());
  return out;
}

std::string stats_report_text(const AugStats& stats) {
  std::ostringstream os;
  const auto row = [&os](std::string_view label, std::size_t value) {
    os << std::left << std::setw(26) << label << value << "\n";
  };
  row("records loaded", stats.records_loaded);
  row("records failed", stats.records_failed);
  row("load warnings", stats.load_warnings);
  row("emitted total", stats.emitted_total);
  os << std::left << std::setw(26) << "multiplier";
  if (stats.multiplier)
    os << std::fixed << std::setprecision(2) << *stats.multiplier << "\n";
  else
    os << "n/a\n";
  row("inconclusive", stats.inconclusive);
  row("dropped not-equivalent", stats.dropped_not_equivalent);
  os << "per-code counts\n";
  for (ControlCode code : kAllCodes) {
    os << "  " << std::left << std::setw(24) << code_name(code)
       << stats.per_code[static_cast<std::size_t>(code)] << "\n";
  }
  return os.str();
}

}  // namespace mwpaug
