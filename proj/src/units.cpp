/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// Unit-suffixed scalars: "452nA", "2.2V", "10min", "26.04mJ", "200lux".
// Integer-grid quantities (uV, nA, us) are converted exactly from the decimal
// text; a value finer than the grid is rejected rather than rounded.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hdpm/scenario.hpp"

namespace hdpm {

namespace {

struct Decimal {
  std::int64_t mantissa = 0;
  int exponent = 0;  // value = mantissa * 10^exponent
  std::string_view suffix;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw std::invalid_argument("'" + std::string(text) + "': " + why);
}

Decimal split_number(std::string_view text) {
  std::string_view s = trim(text);
  Decimal d;
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  bool any_digit = false;
  bool seen_point = false;
  int frac_digits = 0;
  int dropped = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (d.mantissa > (INT64_MAX - 9) / 10) {
        // Beyond 18 significant digits only zeros may follow.
        if (c != '0') bad(text, "too many significant digits");
        if (!seen_point) ++dropped;
        continue;
      }
      d.mantissa = d.mantissa * 10 + (c - '0');
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad(text, "expected a number");
  int exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E') && i + 1 < s.size() &&
      (std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
       ((s[i + 1] == '+' || s[i + 1] == '-') && i + 2 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 2]))))) {
    ++i;
    auto res = std::from_chars(s.data() + i + (s[i] == '+' ? 1 : 0), s.data() + s.size(), exp10);
    if (res.ec != std::errc()) bad(text, "bad exponent");
    i = static_cast<std::size_t>(res.ptr - s.data());
  }
  if (neg) d.mantissa = -d.mantissa;
  d.exponent = exp10 - frac_digits + dropped;
  d.suffix = trim(s.substr(i));
  return d;
}

int si_prefix(std::string_view text, std::string_view prefix) {
  if (prefix.empty()) return 0;
  if (prefix == "G") return 9;
  if (prefix == "M") return 6;
  if (prefix == "k") return 3;
  if (prefix == "m") return -3;
  if (prefix == "u" || prefix == "\xC2\xB5" || prefix == "\xCE\xBC") return -6;
  if (prefix == "n") return -9;
  if (prefix == "p") return -12;
  bad(text, "unknown SI prefix '" + std::string(prefix) + "'");
}

// Prefix exponent for a suffix ending in `unit`; throws if the unit does not match.
int prefixed(std::string_view text, std::string_view suffix, std::string_view unit) {
  if (suffix.size() < unit.size() || suffix.substr(suffix.size() - unit.size()) != unit)
    bad(text, "expected unit '" + std::string(unit) + "'");
  return si_prefix(text, suffix.substr(0, suffix.size() - unit.size()));
}

std::int64_t to_grid(std::string_view text, const Decimal& d, int exp10, std::int64_t multiplier, const char* grid) {
  std::int64_t v = d.mantissa;
  if (exp10 >= 0) {
    for (int k = 0; k < exp10; ++k)
      if (__builtin_mul_overflow(v, 10, &v)) bad(text, "out of range");
  } else {
    for (int k = 0; k < -exp10; ++k) {
      if (v % 10 != 0) bad(text, std::string("not representable at ") + grid + " resolution");
      v /= 10;
    }
  }
  if (__builtin_mul_overflow(v, multiplier, &v)) bad(text, "out of range");
  return v;
}

double to_real(const Decimal& d, int exp10) {
  // Rebuild as text so strtod performs the single correctly rounded conversion.
  std::string buf = std::to_string(d.mantissa) + "e" + std::to_string(exp10);
  return std::strtod(buf.c_str(), nullptr);
}

}  // namespace

Voltage parse_voltage(std::string_view s) {
  auto d = split_number(s);
  int p = prefixed(s, d.suffix, "V");
  auto uv = to_grid(s, d, d.exponent + p + 6, 1, "microvolt");
  return Voltage::microvolts(uv);
}

Current parse_current(std::string_view s) {
  auto d = split_number(s);
  int p = prefixed(s, d.suffix, "A");
  return Current::nanoamps(to_grid(s, d, d.exponent + p + 9, 1, "nanoamp"));
}

Power parse_power(std::string_view s) {
  auto d = split_number(s);
  int p = prefixed(s, d.suffix, "W");
  return Power::nanowatts(to_real(d, d.exponent + p + 9));
}

Energy parse_energy(std::string_view s) {
  auto d = split_number(s);
  int p = prefixed(s, d.suffix, "J");
  return Energy::nanojoules(to_real(d, d.exponent + p + 9));
}

Duration parse_duration(std::string_view s) {
  auto d = split_number(s);
  std::int64_t mult = 1;
  int p = 0;
  if (d.suffix == "min") {
    mult = 60;
  } else if (d.suffix == "h") {
    mult = 3600;
  } else if (d.suffix == "d") {
    mult = 86400;
  } else {
    p = prefixed(s, d.suffix, "s");
  }
  // Scale minutes/hours exactly: convert to seconds-grid first.
  if (mult != 1) {
    std::int64_t us = to_grid(s, d, d.exponent + 6, 1, "microsecond");
    if (__builtin_mul_overflow(us, mult, &us)) bad(s, "out of range");
    return Duration::us(us);
  }
  return Duration::us(to_grid(s, d, d.exponent + p + 6, 1, "microsecond"));
}

Illuminance parse_illuminance(std::string_view s) {
  auto d = split_number(s);
  if (!d.suffix.empty() && d.suffix != "lux" && d.suffix != "lx") bad(s, "expected unit 'lux'");
  return {to_real(d, d.exponent)};
}

double parse_charge_mah(std::string_view s) {
  auto d = split_number(s);
  int p = prefixed(s, d.suffix, "Ah");
  return to_real(d, d.exponent + p + 3);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

namespace {
// Exact decimal rendering of an integer scaled by 10^-digits.
std::string scaled_integer(std::int64_t v, int digits) {
  bool neg = v < 0;
  std::uint64_t a = neg ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
  std::uint64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::string out = std::to_string(a / scale);
  std::uint64_t frac = a % scale;
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return neg ? "-" + out : out;
}
}  // namespace

std::string format_voltage(Voltage v) { return scaled_integer(v.uv, 6) + "V"; }
std::string format_current(Current i) { return std::to_string(i.na) + "nA"; }
namespace {
// Shortest round-trip digits, without an exponent for ordinary magnitudes.
std::string plain_decimal(double v) {
  double a = std::fabs(v);
  if (a != 0.0 && (a < 1e-3 || a >= 1e15)) return format_double(v);
  std::array<char, 64> buf{};
  auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  return std::string(buf.data(), r.ptr);
}
}  // namespace

std::string format_power(Power p) { return plain_decimal(p.nw) + "nW"; }
std::string format_energy(Energy e) { return plain_decimal(e.nj) + "nJ"; }
std::string format_duration(Duration d) { return to_string(d); }

}  // namespace hdpm
