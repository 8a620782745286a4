/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mwpaug {

/// Exact rational used for constant leaves.
///
/// Every value originates from a decimal literal (possibly rescaled by the
/// percent normalizer), so the reduced denominator only ever contains the
/// prime factors 2 and 5 and the value can always be rendered back as a
/// finite decimal string.
class Rational {
 public:
  constexpr Rational() = default;

  /// Normalizing constructor; `den` must be nonzero.
  Rational(std::int64_t num, std::int64_t den);

  /// Parses an unsigned decimal literal: "7", "007", "3.50", ".5".
  /// Rejects signs, exponents, trailing dots and literals longer than
  /// 18 digits.
  static std::optional<Rational> from_decimal(std::string_view text);

  /// Canonical rendering: no redundant leading/trailing zeros, no trailing
  /// dot ("3.50" parses and prints back as "3.5", "5.0" as "5").
  std::string to_decimal() const;

  double to_double() const;

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator*(const Rational& rhs) const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;  // > 0, gcd(|num_|, den_) == 1
};

}  // namespace mwpaug
