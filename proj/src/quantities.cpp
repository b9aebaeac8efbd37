/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/quantities.hpp"

#include <cmath>
#include <cstdio>

namespace hdpm {

namespace detail {
void throw_overflow(const char* what) {
  throw std::overflow_error(std::string("integer overflow in ") + what);
}
}  // namespace detail

Voltage Voltage::volts(double v) { return {std::llround(v * 1e6)}; }

Power power_of(Voltage v, Current i) {
  if (v.uv < 0 || i.na < 0) throw std::domain_error("power_of: negative voltage or current");
  // uV * nA = 1e-15 W = 1e-6 nW. An exact integer product below 2^53 leaves a
  // single rounding in the final division.
  std::int64_t prod;
  if (!__builtin_mul_overflow(v.uv, i.na, &prod) && prod < (std::int64_t{1} << 53)) {
    return {static_cast<double>(prod) / 1e6};
  }
  long double wide = static_cast<long double>(v.uv) * static_cast<long double>(i.na);
  return {static_cast<double>(wide / 1e6L)};
}

Energy energy_of(Power p, Duration d) {
  if (d.count() < 0) throw std::domain_error("energy_of: negative duration");
  if (d.count() == 0) return {};
  return {p.nw * static_cast<double>(d.count()) / 1e6};
}

Power average_power(Energy e, Duration d) {
  if (d.count() <= 0) throw std::domain_error("average_power: non-positive duration");
  return {e.nj * 1e6 / static_cast<double>(d.count())};
}

std::string to_string(Duration d) {
  char buf[48];
  std::int64_t us = d.count();
  if (us % 1000000 == 0) {
    std::snprintf(buf, sizeof buf, "%llds", static_cast<long long>(us / 1000000));
  } else if (us % 1000 == 0) {
    std::snprintf(buf, sizeof buf, "%lldms", static_cast<long long>(us / 1000));
  } else {
    std::snprintf(buf, sizeof buf, "%lldus", static_cast<long long>(us));
  }
  return buf;
}

std::string to_string(Voltage v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g V", v.volts_f());
  return buf;
}

std::string to_string(Current i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld nA", static_cast<long long>(i.na));
  return buf;
}

}  // namespace hdpm
