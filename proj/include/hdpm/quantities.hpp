/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_QUANTITIES_HPP
#define HDPM_QUANTITIES_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hdpm {

namespace detail {

[[noreturn]] void throw_overflow(const char* what);

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw_overflow("time addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw_overflow("time subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw_overflow("time scaling");
  return r;
}

}  // namespace detail

/* Span of simulated time, integer microseconds. */
class Duration {
 public:
  constexpr Duration() = default;

  static constexpr Duration us(std::int64_t v) { return Duration{v}; }
  static Duration ms(std::int64_t v) { return Duration{detail::checked_mul(v, 1000)}; }
  static Duration s(std::int64_t v) { return Duration{detail::checked_mul(v, 1000000)}; }
  static Duration min(std::int64_t v) { return Duration{detail::checked_mul(v, 60000000)}; }

  constexpr std::int64_t count() const { return us_; }
  constexpr double seconds() const { return static_cast<double>(us_) * 1e-6; }

  Duration operator+(Duration o) const { return Duration{detail::checked_add(us_, o.us_)}; }
  Duration operator-(Duration o) const { return Duration{detail::checked_sub(us_, o.us_)}; }
  Duration& operator+=(Duration o) { return *this = *this + o; }
  Duration& operator-=(Duration o) { return *this = *this - o; }
  Duration operator*(std::int64_t k) const { return Duration{detail::checked_mul(us_, k)}; }

  constexpr auto operator<=>(const Duration&) const = default;

 private:
  constexpr explicit Duration(std::int64_t v) : us_(v) {}
  std::int64_t us_ = 0;
};

/* Instant since simulation start, integer microseconds, never negative. */
class TimePoint {
 public:
  constexpr TimePoint() = default;

  static TimePoint us(std::int64_t v) {
    if (v < 0) throw std::domain_error("negative time point");
    return TimePoint{v};
  }
  static TimePoint zero() { return TimePoint{0}; }
  static TimePoint at(Duration since_start) { return us(since_start.count()); }

  constexpr std::int64_t count() const { return us_; }
  constexpr double seconds() const { return static_cast<double>(us_) * 1e-6; }
  Duration since_start() const { return Duration::us(us_); }

  TimePoint operator+(Duration d) const { return us(detail::checked_add(us_, d.count())); }
  TimePoint operator-(Duration d) const { return us(detail::checked_sub(us_, d.count())); }
  Duration operator-(TimePoint o) const { return Duration::us(detail::checked_sub(us_, o.us_)); }
  TimePoint& operator+=(Duration d) { return *this = *this + d; }

  constexpr auto operator<=>(const TimePoint&) const = default;

 private:
  constexpr explicit TimePoint(std::int64_t v) : us_(v) {}
  std::int64_t us_ = 0;
};

/* Integer-grid voltage, microvolts. */
struct Voltage {
  std::int64_t uv = 0;

  static constexpr Voltage microvolts(std::int64_t v) { return {v}; }
  static constexpr Voltage millivolts(std::int64_t v) { return {v * 1000}; }
  static Voltage volts(double v);

  constexpr double volts_f() const { return static_cast<double>(uv) * 1e-6; }
  constexpr Voltage operator+(Voltage o) const { return {uv + o.uv}; }
  constexpr Voltage operator-(Voltage o) const { return {uv - o.uv}; }
  constexpr auto operator<=>(const Voltage&) const = default;
};

/* Integer-grid current, nanoamps. */
struct Current {
  std::int64_t na = 0;

  static constexpr Current nanoamps(std::int64_t v) { return {v}; }
  static constexpr Current microamps(std::int64_t v) { return {v * 1000}; }

  constexpr Current operator+(Current o) const { return {na + o.na}; }
  constexpr Current operator-(Current o) const { return {na - o.na}; }
  constexpr auto operator<=>(const Current&) const = default;
};

/* Power in nanowatts. */
struct Power {
  double nw = 0.0;

  static constexpr Power nanowatts(double v) { return {v}; }
  static constexpr Power microwatts(double v) { return {v * 1e3}; }

  constexpr Power operator+(Power o) const { return {nw + o.nw}; }
  constexpr Power operator-(Power o) const { return {nw - o.nw}; }
  constexpr Power operator-() const { return {-nw}; }
  constexpr Power operator*(double k) const { return {nw * k}; }
  constexpr auto operator<=>(const Power&) const = default;
};

/* Energy in nanojoules. */
struct Energy {
  double nj = 0.0;

  static constexpr Energy nanojoules(double v) { return {v}; }
  static constexpr Energy microjoules(double v) { return {v * 1e3}; }
  static constexpr Energy millijoules(double v) { return {v * 1e6}; }
  static constexpr Energy joules(double v) { return {v * 1e9}; }

  constexpr double mj() const { return nj * 1e-6; }
  constexpr double joules_f() const { return nj * 1e-9; }
  constexpr Energy operator+(Energy o) const { return {nj + o.nj}; }
  constexpr Energy operator-(Energy o) const { return {nj - o.nj}; }
  constexpr Energy& operator+=(Energy o) { nj += o.nj; return *this; }
  constexpr Energy& operator-=(Energy o) { nj -= o.nj; return *this; }
  constexpr auto operator<=>(const Energy&) const = default;
};

struct Illuminance {
  double lux = 0.0;
  constexpr auto operator<=>(const Illuminance&) const = default;
};

/// Drain power of a current at a voltage. Negative inputs are a domain error.
Power power_of(Voltage v, Current i);

/// Energy delivered by constant power over a span. Negative spans are a domain error.
Energy energy_of(Power p, Duration d);

/// Inverse of energy_of for a known span; returns nanowatts.
Power average_power(Energy e, Duration d);

std::string to_string(Duration d);
std::string to_string(Voltage v);
std::string to_string(Current i);

}  // namespace hdpm

#endif  // HDPM_QUANTITIES_HPP
