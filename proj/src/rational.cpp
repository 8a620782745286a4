/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace mwpaug {

namespace {

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
  if (num_ == 0) den_ = 1;
}

std::optional<Rational> Rational::from_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string digits;
  int frac_len = -1;
  for (char c : text) {
    if (c == '.') {
      if (frac_len >= 0) return std::nullopt;
      frac_len = 0;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    digits.push_back(c);
    if (frac_len >= 0) ++frac_len;
  }
  if (digits.empty()) return std::nullopt;       // "." or ""
  if (frac_len == 0) return std::nullopt;        // trailing dot: "5."
  if (digits.size() > 18) return std::nullopt;   // would overflow int64
  std::int64_t num = 0;
  for (char c : digits) num = num * 10 + (c - '0');
  std::int64_t den = 1;
  for (int i = 0; i < std::max(frac_len, 0); ++i) den *= 10;
  return Rational(num, den);
}

std::string Rational::to_decimal() const {
  // The reduced denominator is 2^a * 5^b by construction.
  std::int64_t d = den_;
  int a = 0, b = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++a;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++b;
  }
  if (d != 1) throw std::logic_error("rational is not a finite decimal");
  const int k = std::max(a, b);
  unsigned __int128 scaled =
      static_cast<unsigned __int128>(num_ < 0 ? -num_ : num_);
  for (int i = a; i < k; ++i) scaled *= 2;
  for (int i = b; i < k; ++i) scaled *= 5;
  std::string digits = u128_to_string(scaled);
  if (static_cast<int>(digits.size()) <= k)
    digits.insert(0, static_cast<std::size_t>(k) + 1 - digits.size(), '0');
  std::string out = num_ < 0 ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(k));
  if (k > 0) {
    std::string frac = digits.substr(digits.size() - static_cast<std::size_t>(k));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) {
      out += '.';
      out += frac;
    }
  }
  return out;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::operator*(const Rational& rhs) const {
  const __int128 n = static_cast<__int128>(num_) * rhs.num_;
  const __int128 d = static_cast<__int128>(den_) * rhs.den_;
  // Reduce in 128 bits before the range check so small results survive
  // large intermediates.
  __int128 an = n < 0 ? -n : n;
  __int128 g = d;
  while (g != 0) {
    const __int128 t = an % g;
    an = g;
    g = t;
  }
  if (an == 0) an = 1;
  const __int128 rn = n / an;
  const __int128 rd = d / an;
  constexpr __int128 kMax = INT64_MAX;
  if (rn > kMax || rn < -kMax || rd > kMax)
    throw std::overflow_error("rational multiply overflows");
  return Rational(static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd));
}

}  // namespace mwpaug
