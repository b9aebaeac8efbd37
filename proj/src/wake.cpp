/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/wake.hpp"

#include <stdexcept>

namespace hdpm {

std::string_view wake_source_name(WakeSource s) {
  switch (s) {
    case WakeSource::None: return "None";
    case WakeSource::Touch: return "Touch";
    case WakeSource::Rtc: return "Rtc";
  }
  return "?";
}

std::string_view rtc_rearm_name(RtcRearm r) {
  return r == RtcRearm::OnClear ? "on_clear" : "free_running";
}

LatchState on_touch(const LatchState& latch, TimePoint t) {
  if (t < latch.last_change) throw std::logic_error("on_touch: time regression");
  return {true, WakeSource::Touch, t};
}

std::pair<LatchState, TimePoint> on_rtc_alarm(const LatchState& latch, TimePoint t, const RtcConfig& rtc) {
  if (t < latch.last_change) throw std::logic_error("on_rtc_alarm: time regression");
  return {LatchState{true, WakeSource::Rtc, t}, t + rtc.alarm_period};
}

ClearResult mcu_clear(const LatchState& latch, const ClearCommand& cmd) {
  if (!latch.set) return {latch, true};
  if (cmd.time < latch.last_change) throw std::logic_error("mcu_clear: time regression");
  // I2C command and 2.2_SW_DIS pulse are indistinguishable at this level.
  return {LatchState{false, WakeSource::None, cmd.time}, false};
}

WakeSource read_wake_source(const LatchState& latch) { return latch.wake_source; }

TimePoint WakeOrchestrator::rtc_alarm(TimePoint t, const RtcConfig& rtc) {
  auto [next_latch, next_alarm] = on_rtc_alarm(latch_, t, rtc);
  latch_ = next_latch;
  return next_alarm;
}

void WakeOrchestrator::clear(const ClearCommand& cmd, bool mcu_powered) {
  if (latch_.set && !mcu_powered) {
    throw std::logic_error("latch clear requested while the MCU domain is unpowered");
  }
  auto r = mcu_clear(latch_, cmd);
  if (r.anomalous) {
    anomalies_.push_back("clear at t=" + std::to_string(cmd.time.count()) + "us on an already clear latch");
  }
  latch_ = r.latch;
}

void WakeOrchestrator::power_loss_reset(TimePoint t) {
  if (latch_.set) latch_ = LatchState{false, WakeSource::None, t};
}

}  // namespace hdpm
