/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_PMIC_HPP
#define HDPM_PMIC_HPP

#include <optional>
#include <string_view>
#include <cstddef>

#include "hdpm/quantities.hpp"

namespace hdpm {

enum class ModeKind { DeepSleep, WakeUp, Normal, Overcharge, Shutdown };

inline constexpr ModeKind kAllModes[] = {ModeKind::DeepSleep, ModeKind::WakeUp, ModeKind::Normal,
                                         ModeKind::Overcharge, ModeKind::Shutdown};

std::string_view mode_name(ModeKind k);

/* PMIC operating mode. Shutdown carries the instant at which the grace window lapses. */
class PmicMode {
 public:
  static PmicMode deep_sleep() { return PmicMode{ModeKind::DeepSleep, {}}; }
  static PmicMode wake_up() { return PmicMode{ModeKind::WakeUp, {}}; }
  static PmicMode normal() { return PmicMode{ModeKind::Normal, {}}; }
  static PmicMode overcharge() { return PmicMode{ModeKind::Overcharge, {}}; }
  static PmicMode shutdown(TimePoint grace_deadline) {
    return PmicMode{ModeKind::Shutdown, grace_deadline};
  }

  ModeKind kind() const { return kind_; }
  TimePoint grace_deadline() const;  // Shutdown only
  bool is(ModeKind k) const { return kind_ == k; }

  bool operator==(const PmicMode&) const = default;

 private:
  PmicMode(ModeKind k, TimePoint d) : kind_(k), deadline_(d) {}
  ModeKind kind_;
  TimePoint deadline_;
};

struct PmicConfig {
  Voltage v_cold_start = Voltage::millivolts(300);
  Power p_cold_start = Power::microwatts(2.0);
  Voltage v_chrdy = Voltage::millivolts(3000);
  Voltage v_ovch = Voltage::millivolts(3600);
  Voltage v_ovch_hysteresis = Voltage::millivolts(50);
  Duration grace_window = Duration::ms(600);
  Current i_quiescent = Current::nanoamps(200);

  /// Checks threshold ordering against the storage voltage range [v_empty, v_full].
  /// Throws std::invalid_argument naming the offending field.
  void validate(Voltage v_empty, Voltage v_full) const;

  bool operator==(const PmicConfig&) const = default;
};

struct RailStates {
  bool ao_out = false;
  bool lv_out = false;
  bool hv_out_available = false;
  Voltage rail_voltage_ao = Voltage::millivolts(2200);
  Voltage rail_voltage_lv = Voltage::millivolts(2200);
  Voltage rail_voltage_hv = Voltage::millivolts(3300);

  bool operator==(const RailStates&) const = default;
};

struct PmicInputs {
  Voltage v_store;
  Voltage v_harvester;
  Power p_harvester;
  bool latch_set = false;
  TimePoint now;
};

/* One arc of the mode diagram. */
enum class Guard {
  ColdStart,        // DeepSleep -> WakeUp
  ChargeReady,      // WakeUp -> Normal
  OvchReached,      // Normal -> Overcharge
  OvchReleased,     // Overcharge -> Normal
  StorageLow,       // Normal -> Shutdown
  StorageRecovered, // Shutdown -> Normal
  GraceExpired,     // Shutdown -> DeepSleep
};

std::string_view guard_name(Guard g);

/* Small fixed-capacity guard list; step_mode runs once per integrator step. */
class GuardSet {
 public:
  void push_back(Guard g) { items_[n_++] = g; }
  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  Guard front() const { return items_[0]; }
  const Guard* begin() const { return items_; }
  const Guard* end() const { return items_ + n_; }

 private:
  Guard items_[7] = {};
  std::size_t n_ = 0;
};

/// Every guard whose condition holds for this mode and input. The mode diagram
/// is well formed when this never has more than one element.
GuardSet enabled_guards(const PmicMode& mode, const PmicConfig& cfg, const PmicInputs& in);

/// Successor mode. Thresholds compare with >= / < so boundary equality
/// belongs to the higher mode. Throws std::logic_error if `in.now` precedes
/// the entry time of a Shutdown mode.
PmicMode step_mode(const PmicMode& mode, const PmicConfig& cfg, const PmicInputs& in);

RailStates rails_for(ModeKind mode, bool latch_set);

enum class Stage { NotOperating, Stage1, Stage2 };
std::string_view stage_name(Stage s);

Stage operating_stage(ModeKind mode, bool latch_set);

/* step_mode plus the monotone-time precondition. */
class PmicMachine {
 public:
  PmicMachine(PmicConfig cfg, PmicMode initial) : cfg_(cfg), mode_(initial) {}

  const PmicMode& mode() const { return mode_; }
  const PmicConfig& config() const { return cfg_; }

  /// Throws std::logic_error when time runs backwards.
  const PmicMode& step(const PmicInputs& in);

 private:
  PmicConfig cfg_;
  PmicMode mode_;
  std::optional<TimePoint> last_;
};

}  // namespace hdpm

#endif  // HDPM_PMIC_HPP
