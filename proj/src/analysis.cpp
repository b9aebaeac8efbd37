/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace hdpm {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// Labels are not configuration.
bool ignored_field(const std::string& field) {
  return field.rfind("dpm.", 0) == 0 || field.rfind("meta.", 0) == 0;
}

std::vector<std::string> differing_fields(const Scenario& a, const Scenario& b) {
  std::map<std::string, std::string> fa, fb;
  for (auto& [k, v] : scenario_fields(a)) fa[k] = v;
  for (auto& [k, v] : scenario_fields(b)) fb[k] = v;
  std::vector<std::string> diff;
  for (const auto& [k, v] : fa) {
    if (ignored_field(k)) continue;
    auto it = fb.find(k);
    if (it == fb.end() || it->second != v) diff.push_back(k);
  }
  for (const auto& [k, v] : fb)
    if (!ignored_field(k) && !fa.count(k)) diff.push_back(k);
  return diff;
}

Energy mean_completed_cycle(const Report& r) {
  double sum = 0.0;
  int n = 0;
  for (const auto& c : r.cycles) {
    if (!c.script_completed) continue;
    sum += c.consumed.nj;
    ++n;
  }
  return Energy{n ? sum / n : 0.0};
}

Energy analytic_cycle(const Scenario& s) {
  Duration sleep = s.cycle_duration() - s.load_script.total_duration();
  return cycle_energy(s.load_script, s.idle_power(), sleep);
}

double autonomy_s(const Scenario& s, Energy cycle) {
  StorageElement st = s.make_storage();
  double usable = st.e_store().nj - st.energy_reaching(s.pmic.v_chrdy).nj;
  double watts = cycle.nj / s.cycle_duration().seconds();
  if (usable <= 0.0 || watts <= 0.0) return 0.0;
  return usable / watts;
}

}  // namespace

MismatchError::MismatchError(std::vector<std::string> fields)
    : std::invalid_argument("scenarios differ outside dpm: " + join(fields)), fields_(std::move(fields)) {}

ComparisonReport compare_dpm(const Report& hw, const Report& sw) {
  auto diff = differing_fields(hw.scenario, sw.scenario);
  if (!diff.empty()) throw MismatchError(std::move(diff));

  ComparisonReport c;
  c.idle_hw = hw.scenario.idle_current();
  c.idle_sw = sw.scenario.idle_current();
  if (c.idle_hw.na <= 0) throw std::domain_error("hardware idle current must be positive");
  c.idle_ratio = static_cast<double>(c.idle_sw.na) / static_cast<double>(c.idle_hw.na);

  c.cycle_hw = analytic_cycle(hw.scenario);
  c.cycle_sw = analytic_cycle(sw.scenario);
  c.cycle_ratio = c.cycle_hw.nj > 0.0 ? c.cycle_sw.nj / c.cycle_hw.nj : 1.0;
  c.simulated_cycle_hw = mean_completed_cycle(hw);
  c.simulated_cycle_sw = mean_completed_cycle(sw);

  c.autonomy_hw_s = autonomy_s(hw.scenario, c.cycle_hw);
  c.autonomy_sw_s = autonomy_s(sw.scenario, c.cycle_sw);
  c.lifetime_delta_s = c.autonomy_hw_s - c.autonomy_sw_s;

  c.notes.push_back("idle ratio is printed unrounded; 452 nA against 3 uA is commonly quoted as 6.6x");
  return c;
}

std::string emit_comparison(const ComparisonReport& c) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "idle current       hw %s  sw %s  ratio %s\n", format_current(c.idle_hw).c_str(),
                format_current(c.idle_sw).c_str(), format_double(c.idle_ratio).c_str());
  out += buf;
  std::snprintf(buf, sizeof buf, "cycle energy       hw %.6f mJ  sw %.6f mJ  ratio %s\n", c.cycle_hw.mj(), c.cycle_sw.mj(),
                format_double(c.cycle_ratio).c_str());
  out += buf;
  std::snprintf(buf, sizeof buf, "simulated cycle    hw %.6f mJ  sw %.6f mJ\n", c.simulated_cycle_hw.mj(),
                c.simulated_cycle_sw.mj());
  out += buf;
  std::snprintf(buf, sizeof buf, "dark autonomy      hw %.1f h  sw %.1f h  delta %.1f h\n", c.autonomy_hw_s / 3600.0,
                c.autonomy_sw_s / 3600.0, c.lifetime_delta_s / 3600.0);
  out += buf;
  for (const auto& n : c.notes) out += "note: " + n + "\n";
  return out;
}

Energy cycle_net_at(const Scenario& scenario, Illuminance lux) {
  Scenario s = scenario;
  s.light = {LightPoint{TimePoint::zero(), lux}};
  s.rtc.first_alarm = TimePoint::zero();
  s.touch.press_times.clear();
  s.duration = s.cycle_duration();
  Report r = run(s);
  return r.ledger.e_harvested - r.ledger.total_consumed();
}

Illuminance sweep_lux(const Scenario& scenario, Illuminance lo, Illuminance hi, double resolution) {
  if (!(lo.lux < hi.lux)) throw std::invalid_argument("sweep bracket needs lo < hi");
  if (!(resolution > 0.0)) throw std::invalid_argument("sweep resolution must be positive");
  double n_lo = cycle_net_at(scenario, lo).nj;
  double n_hi = cycle_net_at(scenario, hi).nj;
  if (n_lo == 0.0) return lo;
  if (n_hi == 0.0) return hi;
  if ((n_lo < 0.0) == (n_hi < 0.0)) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "bracket does not change sign: net %.6g nJ at %g lux, %.6g nJ at %g lux", n_lo,
                  lo.lux, n_hi, hi.lux);
    throw std::invalid_argument(buf);
  }
  double a = lo.lux, b = hi.lux;
  bool rising = n_lo < 0.0;
  while (b - a > resolution) {
    double mid = 0.5 * (a + b);
    double n = cycle_net_at(scenario, Illuminance{mid}).nj;
    if (n == 0.0) return Illuminance{mid};
    if ((n < 0.0) == rising) a = mid;
    else b = mid;
  }
  return Illuminance{0.5 * (a + b)};
}

}  // namespace hdpm
