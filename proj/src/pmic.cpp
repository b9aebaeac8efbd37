/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/pmic.hpp"

#include <stdexcept>
#include <string>

namespace hdpm {

std::string_view mode_name(ModeKind k) {
  switch (k) {
    case ModeKind::DeepSleep: return "DeepSleep";
    case ModeKind::WakeUp: return "WakeUp";
    case ModeKind::Normal: return "Normal";
    case ModeKind::Overcharge: return "Overcharge";
    case ModeKind::Shutdown: return "Shutdown";
  }
  return "?";
}

std::string_view guard_name(Guard g) {
  switch (g) {
    case Guard::ColdStart: return "ColdStart";
    case Guard::ChargeReady: return "ChargeReady";
    case Guard::OvchReached: return "OvchReached";
    case Guard::OvchReleased: return "OvchReleased";
    case Guard::StorageLow: return "StorageLow";
    case Guard::StorageRecovered: return "StorageRecovered";
    case Guard::GraceExpired: return "GraceExpired";
  }
  return "?";
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::NotOperating: return "NotOperating";
    case Stage::Stage1: return "Stage1";
    case Stage::Stage2: return "Stage2";
  }
  return "?";
}

TimePoint PmicMode::grace_deadline() const {
  if (kind_ != ModeKind::Shutdown) throw std::logic_error("grace deadline requested outside Shutdown");
  return deadline_;
}

void PmicConfig::validate(Voltage v_empty, Voltage v_full) const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("pmic." + field + ": " + why);
  };
  if (v_cold_start.uv < 0) fail("v_cold_start", "must be non-negative");
  if (p_cold_start.nw < 0) fail("p_cold_start", "must be non-negative");
  if (i_quiescent.na < 0) fail("i_quiescent", "must be non-negative");
  if (grace_window.count() <= 0) fail("grace_window", "must be positive");
  if (!(v_empty < v_chrdy))
    fail("v_chrdy", "must lie above the empty-storage voltage " + to_string(v_empty));
  if (!(v_chrdy < v_ovch)) fail("v_ovch", "must exceed v_chrdy");
  if (v_ovch > v_full)
    fail("v_ovch", "must not exceed the full-storage voltage " + to_string(v_full));
  if (v_ovch_hysteresis.uv <= 0) fail("v_ovch_hysteresis", "must be positive");
  if (v_ovch - v_ovch_hysteresis < v_chrdy) fail("v_ovch_hysteresis", "v_ovch - hysteresis must stay >= v_chrdy");
}

GuardSet enabled_guards(const PmicMode& mode, const PmicConfig& cfg, const PmicInputs& in) {
  GuardSet out;
  switch (mode.kind()) {
    case ModeKind::DeepSleep:
      if (in.v_harvester >= cfg.v_cold_start && in.p_harvester >= cfg.p_cold_start)
        out.push_back(Guard::ColdStart);
      break;
    case ModeKind::WakeUp:
      if (in.v_store >= cfg.v_chrdy) out.push_back(Guard::ChargeReady);
      break;
    case ModeKind::Normal:
      if (in.v_store >= cfg.v_ovch) out.push_back(Guard::OvchReached);
      if (in.v_store < cfg.v_chrdy) out.push_back(Guard::StorageLow);
      break;
    case ModeKind::Overcharge:
      if (in.v_store <= cfg.v_ovch - cfg.v_ovch_hysteresis) out.push_back(Guard::OvchReleased);
      break;
    case ModeKind::Shutdown:
      if (in.v_store >= cfg.v_chrdy) out.push_back(Guard::StorageRecovered);
      else if (in.now >= mode.grace_deadline()) out.push_back(Guard::GraceExpired);
      break;
  }
  return out;
}

PmicMode step_mode(const PmicMode& mode, const PmicConfig& cfg, const PmicInputs& in) {
  if (mode.is(ModeKind::Shutdown) && in.now < mode.grace_deadline() - cfg.grace_window) {
    throw std::logic_error("step_mode: time precedes Shutdown entry");
  }
  auto guards = enabled_guards(mode, cfg, in);
  if (guards.empty()) return mode;
  if (guards.size() > 1) throw std::logic_error("step_mode: more than one guard enabled");
  switch (guards.front()) {
    case Guard::ColdStart: return PmicMode::wake_up();
    case Guard::ChargeReady:
    case Guard::OvchReleased:
    case Guard::StorageRecovered: return PmicMode::normal();
    case Guard::OvchReached: return PmicMode::overcharge();
    case Guard::StorageLow: return PmicMode::shutdown(in.now + cfg.grace_window);
    case Guard::GraceExpired: return PmicMode::deep_sleep();
  }
  return mode;
}

RailStates rails_for(ModeKind mode, bool latch_set) {
  RailStates r;
  bool regulated = mode == ModeKind::Normal || mode == ModeKind::Overcharge;
  r.ao_out = mode != ModeKind::DeepSleep;
  r.lv_out = regulated && latch_set;
  r.hv_out_available = regulated;
  return r;
}

Stage operating_stage(ModeKind mode, bool latch_set) {
  if (mode != ModeKind::Normal && mode != ModeKind::Overcharge) return Stage::NotOperating;
  return latch_set ? Stage::Stage2 : Stage::Stage1;
}

const PmicMode& PmicMachine::step(const PmicInputs& in) {
  if (last_ && in.now < *last_) throw std::logic_error("PmicMachine: non-monotone time");
  last_ = in.now;
  mode_ = step_mode(mode_, cfg_, in);
  return mode_;
}

}  // namespace hdpm
