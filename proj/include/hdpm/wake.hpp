/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_WAKE_HPP
#define HDPM_WAKE_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdpm/quantities.hpp"

namespace hdpm {

enum class WakeSource { None, Touch, Rtc };
std::string_view wake_source_name(WakeSource s);

/* The set-dominant enable latch held in the touch controller, plus its
   wake-source register. */
struct LatchState {
  bool set = false;
  WakeSource wake_source = WakeSource::None;
  TimePoint last_change;

  bool operator==(const LatchState&) const = default;
};

enum class RtcRearm {
  FreeRunning,  // alarms at first_alarm + k * period regardless of the load
  OnClear,      // the MCU reprograms the countdown when it clears the latch
};
std::string_view rtc_rearm_name(RtcRearm r);

struct RtcConfig {
  Duration alarm_period = Duration::min(10);
  TimePoint first_alarm;
  Current i_quiescent = Current::nanoamps(45);
  RtcRearm rearm = RtcRearm::FreeRunning;

  bool operator==(const RtcConfig&) const = default;
};

struct TouchScript {
  std::vector<TimePoint> press_times;  // strictly increasing
  Current i_quiescent = Current::nanoamps(65);

  bool operator==(const TouchScript&) const = default;
};

enum class ClearVia { I2cCommand, SwDisSignal };

struct ClearCommand {
  ClearVia via = ClearVia::I2cCommand;
  TimePoint time;
};

struct ClearResult {
  LatchState latch;
  bool anomalous = false;  // clear issued while the latch was already clear
};

/// Throws std::logic_error if t precedes latch.last_change.
LatchState on_touch(const LatchState& latch, TimePoint t);

/// Returns the set latch and the free-running next alarm time.
std::pair<LatchState, TimePoint> on_rtc_alarm(const LatchState& latch, TimePoint t, const RtcConfig& rtc);

ClearResult mcu_clear(const LatchState& latch, const ClearCommand& cmd);

WakeSource read_wake_source(const LatchState& latch);

/* Latch owner used by the engine: applies set sources and rejects clear
   commands that arrive while the MCU domain is unpowered. */
class WakeOrchestrator {
 public:
  const LatchState& latch() const { return latch_; }
  const std::vector<std::string>& anomalies() const { return anomalies_; }

  void touch(TimePoint t) { latch_ = on_touch(latch_, t); }
  TimePoint rtc_alarm(TimePoint t, const RtcConfig& rtc);

  /// Throws std::logic_error when the latch is set but `mcu_powered` is false.
  void clear(const ClearCommand& cmd, bool mcu_powered);

  /// The latch loses its state when the always-on rail drops or the PMIC
  /// cuts the switched domain mid-run.
  void power_loss_reset(TimePoint t);

 private:
  LatchState latch_;
  std::vector<std::string> anomalies_;
};

}  // namespace hdpm

#endif  // HDPM_WAKE_HPP
