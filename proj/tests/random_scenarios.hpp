// Randomized scenarios for engine / fixed-step comparisons. Small storage
// elements make threshold crossings, shutdown and recovery likely within a
// couple of simulated hours. Scripted times sit on the 1 ms grid.

#ifndef HDPM_TESTS_RANDOM_SCENARIOS_HPP
#define HDPM_TESTS_RANDOM_SCENARIOS_HPP

#include <random>
#include <string>

#include "hdpm/scenario.hpp"

namespace hdpm::testing {

inline Scenario random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto irange = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };

  Scenario s = case_study_scenario();
  s.name = "random_" + std::to_string(seed);
  s.notes.clear();

  s.duration = Duration::ms(irange(20 * 60'000, 120 * 60'000));
  s.storage.capacity_mah = uni(0.004, 0.08);
  s.storage.initial_soc = uni(0.0, 1.0);
  s.pmic.v_chrdy = Voltage::millivolts(irange(3300, 3700));
  s.pmic.v_ovch = Voltage::millivolts(irange(3900, 4150));
  s.pmic.v_ovch_hysteresis = Voltage::millivolts(irange(10, 150));

  s.rtc.alarm_period = Duration::ms(irange(30'000, 15 * 60'000));
  s.rtc.first_alarm = TimePoint::at(Duration::ms(irange(0, 300'000)));
  s.rtc.rearm = (rng() & 1) ? RtcRearm::OnClear : RtcRearm::FreeRunning;

  s.light.clear();
  TimePoint t = TimePoint::zero();
  while (t < TimePoint::at(s.duration)) {
    double lux = (rng() % 4 == 0) ? 0.0 : std::round(uni(0.0, 600.0));
    s.light.push_back({t, Illuminance{lux}});
    t += Duration::ms(irange(60'000, 40 * 60'000));
  }

  s.touch.press_times.clear();
  int presses = static_cast<int>(irange(0, 6));
  std::vector<std::int64_t> ms;
  for (int k = 0; k < presses; ++k) ms.push_back(irange(1, s.duration.count() / 1000 - 1));
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  for (auto m : ms) s.touch.press_times.push_back(TimePoint::at(Duration::ms(m)));

  s.load_script.steps.clear();
  int steps = static_cast<int>(irange(1, 3));
  for (int k = 0; k < steps; ++k) {
    Duration d = Duration::ms(irange(5, 4000));
    double mw = uni(0.05, 2.0);  // step draw in mW
    s.load_script.steps.push_back(
        {"step" + std::to_string(k), d, Energy{mw * 1e6 * d.seconds()}, (rng() & 1) ? Rail::LV : Rail::HV});
  }
  if (rng() % 5 == 0) {
    s.dpm.kind = DpmVariantKind::SoftwareSleep;
    s.dpm.i_sleep = Current::nanoamps(irange(1000, 5000));
  }
  s.validate();
  return s;
}

}  // namespace hdpm::testing

#endif  // HDPM_TESTS_RANDOM_SCENARIOS_HPP
