/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_ANALYSIS_HPP
#define HDPM_ANALYSIS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hdpm/engine.hpp"

namespace hdpm {

/* Scenarios given to compare_dpm differ outside the dpm section. */
class MismatchError : public std::invalid_argument {
 public:
  explicit MismatchError(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

struct ComparisonReport {
  Current idle_hw;
  Current idle_sw;
  double idle_ratio = 1.0;  // sw idle current / hw idle current

  // Analytic cycle energy from each scenario's script and idle draw.
  Energy cycle_hw;
  Energy cycle_sw;
  double cycle_ratio = 1.0;

  // Mean simulated consumption over cycles that ran the whole script; zero
  // when a run has none.
  Energy simulated_cycle_hw;
  Energy simulated_cycle_sw;

  // Time in darkness from the initial charge down to v_chrdy at the mean
  // analytic draw.
  double autonomy_hw_s = 0.0;
  double autonomy_sw_s = 0.0;
  double lifetime_delta_s = 0.0;  // hw - sw

  std::vector<std::string> notes;
};

ComparisonReport compare_dpm(const Report& hw, const Report& sw);
std::string emit_comparison(const ComparisonReport& c);

/// Net energy (harvested - consumed) over one wake cycle at constant light,
/// starting with an RTC alarm at t = 0.
Energy cycle_net_at(const Scenario& scenario, Illuminance lux);

/// Bisection on cycle_net_at to `resolution`. Throws std::invalid_argument if
/// the bracket does not change sign.
Illuminance sweep_lux(const Scenario& scenario, Illuminance lo, Illuminance hi, double resolution = 0.1);

}  // namespace hdpm

#endif  // HDPM_ANALYSIS_HPP
