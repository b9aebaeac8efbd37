/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_SCENARIO_HPP
#define HDPM_SCENARIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdpm/energy.hpp"
#include "hdpm/pmic.hpp"
#include "hdpm/wake.hpp"

namespace hdpm {

inline constexpr int kSchemaVersion = 1;

enum class DpmVariantKind { HardwareGated, SoftwareSleep };

struct DpmVariant {
  DpmVariantKind kind = DpmVariantKind::HardwareGated;
  Current i_sleep = Current::microamps(3);  // used by SoftwareSleep only

  bool operator==(const DpmVariant&) const = default;
};

struct StorageSpec {
  double capacity_mah = 10.0;
  Voltage nominal_voltage = Voltage::millivolts(3700);
  OcvCurve ocv = OcvCurve::default_liion();
  double initial_soc = 0.5;

  bool operator==(const StorageSpec&) const = default;
};

struct LightPoint {
  TimePoint time;
  Illuminance lux;
  bool operator==(const LightPoint&) const = default;
};

/* Full simulation input. */
struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string description;

  PmicConfig pmic;
  StorageSpec storage;
  Current i_extra_leakage = Current::nanoamps(142);
  Voltage ao_rail_voltage = Voltage::millivolts(2200);
  // Pre-measured always-on energy per cycle for the analytic budget; the
  // simulation always integrates the budget currents.
  std::optional<Energy> always_on_measured;
  RtcConfig rtc;
  TouchScript touch;
  HarvesterModel harvester;
  std::vector<LightPoint> light;
  LoadScript load_script;
  DpmVariant dpm;
  Duration duration = Duration::min(10);

  // Defaults applied while parsing; not part of the configuration identity.
  std::vector<std::string> notes;

  AlwaysOnBudget budget() const;
  /// Idle draw of whichever DPM variant is configured.
  Power idle_power() const;
  Current idle_current() const;
  StorageElement make_storage() const;
  /// Sleep span + active span, for the configured RTC re-arm policy.
  Duration cycle_duration() const;

  /// Throws ScenarioError on any cross-field invariant violation.
  void validate() const;

  bool same_configuration(const Scenario& o) const;
};

/* Parse / validation failure, carrying the offending field and 1-based line (0 if unknown). */
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, int line, const std::string& msg);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// The bundled thermal-comfort case study.
Scenario case_study_scenario();

Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

/// Canonical document; parse_scenario(emit_scenario(s)) reproduces s.
std::string emit_scenario(const Scenario& s);

/// Flattened (field path, canonical value) pairs used for diffs.
std::vector<std::pair<std::string, std::string>> scenario_fields(const Scenario& s);

/* Unit-suffixed scalar parsing, exposed for tests. Each throws std::invalid_argument. */
Voltage parse_voltage(std::string_view s);
Current parse_current(std::string_view s);
Power parse_power(std::string_view s);
Energy parse_energy(std::string_view s);
Duration parse_duration(std::string_view s);
Illuminance parse_illuminance(std::string_view s);
double parse_charge_mah(std::string_view s);

std::string format_voltage(Voltage v);
std::string format_current(Current i);
std::string format_power(Power p);
std::string format_energy(Energy e);
std::string format_duration(Duration d);
std::string format_double(double v);

}  // namespace hdpm

#endif  // HDPM_SCENARIO_HPP
