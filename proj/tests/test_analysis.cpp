#include <doctest.h>

#include <cmath>
#include <limits>

#include "hdpm/analysis.hpp"

using namespace hdpm;

namespace {

Scenario with_sleep(Current i) {
  Scenario s = case_study_scenario();
  s.duration = s.cycle_duration() * 2;
  s.dpm.kind = DpmVariantKind::SoftwareSleep;
  s.dpm.i_sleep = i;
  return s;
}

Scenario hw() {
  Scenario s = case_study_scenario();
  s.duration = s.cycle_duration() * 2;
  return s;
}

}  // namespace

TEST_CASE("idle current ratio") {
  Report h = run(hw());
  auto c = compare_dpm(h, run(with_sleep(Current::microamps(3))));
  CHECK(c.idle_ratio == doctest::Approx(3000.0 / 452.0).epsilon(1e-15));
  CHECK(c.idle_ratio == doctest::Approx(6.64).epsilon(0.001));
  CHECK(std::abs(c.idle_ratio - 6.6) / 6.6 < 0.01);

  auto same = compare_dpm(h, h);
  CHECK(same.idle_ratio == 1.0);
  CHECK(same.cycle_ratio == 1.0);
  CHECK(same.lifetime_delta_s == 0.0);

  auto alt = compare_dpm(h, run(with_sleep(Current::nanoamps(2570))));
  CHECK(alt.idle_ratio == doctest::Approx(5.69).epsilon(0.001));
}

TEST_CASE("comparison ratios invert when swapped") {
  Report h = run(hw());
  Report s = run(with_sleep(Current::microamps(3)));
  auto ab = compare_dpm(h, s);
  auto ba = compare_dpm(s, h);
  double prod = ab.idle_ratio * ba.idle_ratio;
  CHECK(std::abs(prod - 1.0) <= std::numeric_limits<double>::epsilon());
  CHECK(ab.cycle_ratio * ba.cycle_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ab.lifetime_delta_s == -ba.lifetime_delta_s);
}

TEST_CASE("comparison energy and lifetime") {
  auto c = compare_dpm(run(hw()), run(with_sleep(Current::microamps(3))));
  CHECK(c.cycle_hw.mj() == doctest::Approx(2.146355204).epsilon(1e-12));
  CHECK(c.cycle_sw.mj() == doctest::Approx(5.529531).epsilon(1e-12));
  CHECK(c.simulated_cycle_hw.mj() == doctest::Approx(c.cycle_hw.mj()).epsilon(1e-9));
  CHECK(c.simulated_cycle_sw.mj() == doctest::Approx(c.cycle_sw.mj()).epsilon(1e-9));
  CHECK(c.autonomy_hw_s > c.autonomy_sw_s);
  CHECK(c.lifetime_delta_s > 0.0);
  CHECK(emit_comparison(c).find("6.6") != std::string::npos);
}

TEST_CASE("mismatched scenarios list the differing fields") {
  Scenario other = with_sleep(Current::microamps(3));
  other.rtc.alarm_period = Duration::min(5);
  other.storage.initial_soc = 0.7;
  try {
    compare_dpm(run(hw()), run(other));
    FAIL("expected a mismatch");
  } catch (const MismatchError& e) {
    CHECK(e.fields() == std::vector<std::string>{"rtc.alarm_period", "storage.initial_soc"});
  }
}

TEST_CASE("one-cycle net energy at constant light") {
  Scenario s = case_study_scenario();
  CHECK(cycle_net_at(s, Illuminance{200}).mj() == doctest::Approx(23.8936448).epsilon(1e-7));
  CHECK(cycle_net_at(s, Illuminance{300}).mj() == doctest::Approx(36.0536448).epsilon(1e-7));
  CHECK(cycle_net_at(s, Illuminance{500}).mj() == doctest::Approx(70.2736448).epsilon(1e-7));
}

TEST_CASE("breakeven sweep") {
  Scenario s = case_study_scenario();
  Illuminance b = sweep_lux(s, Illuminance{1}, Illuminance{200});
  // harvest_power(lux) x 603.535 s = 2.146355 mJ on the (0,0)-(200, 43.146 uW) segment
  double exact = 2.146355204e6 / (26.04e6 / 200.0);
  CHECK(b.lux == doctest::Approx(exact).epsilon(0.1 / exact));
  CHECK(std::abs(b.lux - 16.5) < 0.1);
  // Plugging the result back in leaves at most one resolution step of harvest.
  Power per_lux = harvest_power(s.harvester, Illuminance{0.1});
  CHECK(std::abs(cycle_net_at(s, b).nj) <= energy_of(per_lux, s.cycle_duration()).nj);

  Scenario sw = s;
  sw.dpm.kind = DpmVariantKind::SoftwareSleep;
  Illuminance bs = sweep_lux(sw, Illuminance{1}, Illuminance{200});
  CHECK(bs.lux > b.lux);
  CHECK(bs.lux == doctest::Approx(5.529531e6 / (26.04e6 / 200.0)).epsilon(0.003));
}

TEST_CASE("sweep bracket must change sign") {
  Scenario s = case_study_scenario();
  CHECK_THROWS_AS(sweep_lux(s, Illuminance{100}, Illuminance{200}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_lux(s, Illuminance{200}, Illuminance{100}), std::invalid_argument);
}

TEST_CASE("zero consumption breaks even in the dark") {
  Scenario s = case_study_scenario();
  s.load_script.steps.clear();
  s.pmic.i_quiescent = Current{};
  s.rtc.i_quiescent = Current{};
  s.touch.i_quiescent = Current{};
  s.i_extra_leakage = Current{};
  CHECK(cycle_net_at(s, Illuminance{0}).nj == 0.0);
  CHECK(sweep_lux(s, Illuminance{0}, Illuminance{200}).lux == 0.0);
}
