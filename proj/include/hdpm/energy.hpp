/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_ENERGY_HPP
#define HDPM_ENERGY_HPP

#include <string>
#include <vector>

#include "hdpm/quantities.hpp"

namespace hdpm {

struct OcvPoint {
  double soc = 0.0;
  Voltage v;
  bool operator==(const OcvPoint&) const = default;
};

/* Piecewise-linear open-circuit voltage over state of charge. */
class OcvCurve {
 public:
  OcvCurve() = default;
  /// Throws std::invalid_argument unless soc is strictly increasing from 0 to 1
  /// and voltage is non-decreasing.
  explicit OcvCurve(std::vector<OcvPoint> points);

  /// Generic small li-ion shape used when a scenario gives no curve.
  static OcvCurve default_liion();

  const std::vector<OcvPoint>& points() const { return points_; }
  Voltage empty() const { return points_.front().v; }
  Voltage full() const { return points_.back().v; }

  /// Unrounded interpolated voltage, microvolts.
  double microvolts_at(double soc) const;

  /// Smallest soc whose voltage reaches v. Domain error outside [empty, full].
  double soc_reaching(Voltage v) const;
  /// Largest soc whose voltage does not exceed v. Domain error outside [empty, full].
  double soc_not_exceeding(Voltage v) const;

  bool operator==(const OcvCurve&) const = default;

 private:
  std::vector<OcvPoint> points_;
};

/* Energy-tracked storage element. */
class StorageElement {
 public:
  StorageElement() = default;
  StorageElement(double capacity_mah, Voltage nominal_voltage, OcvCurve curve, double initial_soc);

  double capacity_mah() const { return capacity_mah_; }
  Voltage nominal_voltage() const { return nominal_; }
  const OcvCurve& curve() const { return curve_; }

  /// mAh * 3.6 C/mAh * nominal voltage.
  Energy e_capacity() const { return e_capacity_; }
  Energy e_store() const { return e_store_; }
  double soc() const { return e_store_.nj / e_capacity_.nj; }
  Voltage v_store() const;

  /// Stored energy at which the terminal voltage first reaches v.
  Energy energy_reaching(Voltage v) const { return {curve_.soc_reaching(v) * e_capacity_.nj}; }
  Energy energy_not_exceeding(Voltage v) const { return {curve_.soc_not_exceeding(v) * e_capacity_.nj}; }

  /// Replaces the content; throws std::domain_error outside [0, e_capacity].
  void set_energy(Energy e);

 private:
  double capacity_mah_ = 0.0;
  Voltage nominal_;
  OcvCurve curve_;
  Energy e_capacity_;
  Energy e_store_;
};

/// Domain error for soc outside [0, 1].
Voltage ocv(const StorageElement& storage, double soc);

struct ApplyResult {
  StorageElement storage;
  Energy overflow;   // rejected at the full clamp
  Energy underflow;  // demand that found the store empty
};

ApplyResult apply_net_power(const StorageElement& storage, Power p_net, Duration dt);

struct CalibrationPoint {
  Illuminance lux;
  Power power;
  bool operator==(const CalibrationPoint&) const = default;
};

/* Photovoltaic harvester: lux -> delivered power, anchored at (0, 0). */
class HarvesterModel {
 public:
  HarvesterModel() = default;
  /// Throws std::invalid_argument unless lux > 0 strictly increasing and power non-decreasing.
  HarvesterModel(std::vector<CalibrationPoint> points, Voltage v_lit);

  const std::vector<CalibrationPoint>& points() const { return points_; }
  /// Cell voltage presented to the PMIC while any light falls on it.
  Voltage v_lit() const { return v_lit_; }

  bool operator==(const HarvesterModel&) const = default;

 private:
  std::vector<CalibrationPoint> points_;
  Voltage v_lit_;
};

/// Linear over the calibration (with the origin anchor), extrapolating the last
/// segment. Negative lux is a domain error.
Power harvest_power(const HarvesterModel& model, Illuminance lux);
Voltage harvester_voltage(const HarvesterModel& model, Illuminance lux);

struct AlwaysOnBudget {
  Current i_pmic = Current::nanoamps(200);
  Current i_rtc = Current::nanoamps(45);
  Current i_touch = Current::nanoamps(65);
  Current i_extra_leakage = Current::nanoamps(142);
  Voltage rail_voltage = Voltage::millivolts(2200);

  Current total() const { return i_pmic + i_rtc + i_touch + i_extra_leakage; }
  bool operator==(const AlwaysOnBudget&) const = default;
};

Power always_on_power(const AlwaysOnBudget& budget);

enum class Rail { LV, HV };

struct LoadStep {
  std::string name;
  Duration duration;
  Energy energy;
  Rail rail = Rail::LV;

  /// Constant draw while active; zero for zero-length steps.
  Power power() const;
  bool operator==(const LoadStep&) const = default;
};

struct LoadScript {
  std::vector<LoadStep> steps;

  /// Sense -> compute -> advertise sequence from the thermal-comfort node.
  static LoadScript thermal_comfort();

  /// Throws std::invalid_argument on negative energy or duration, or energy with zero duration.
  void validate() const;
  Duration total_duration() const;
  Energy total_energy() const;
  bool operator==(const LoadScript&) const = default;
};

/// Step energies plus idle draw over the sleep span and every step.
Energy cycle_energy(const LoadScript& script, const AlwaysOnBudget& budget, Duration sleep);
Energy cycle_energy(const LoadScript& script, Power idle, Duration sleep);
/// Step energies plus a pre-measured always-on figure for the whole cycle.
Energy cycle_energy_measured(const LoadScript& script, Energy always_on);

Energy net_gain(const HarvesterModel& model, Illuminance lux, Energy cycle, Duration cycle_duration);

/// Load step sized from the MCU run-mode figure (uA per MHz at the rail voltage).
LoadStep mcu_run_step(std::string name, double clock_mhz, Duration duration,
                      Voltage rail = Voltage::millivolts(2200), double ua_per_mhz = 37.0);

}  // namespace hdpm

#endif  // HDPM_ENERGY_HPP
