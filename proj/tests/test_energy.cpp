#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <random>

#include "hdpm/energy.hpp"
#include "hdpm/scenario.hpp"

using namespace hdpm;

namespace {

const Duration kCycle = Duration::ms(603535);

HarvesterModel pv() {
  return HarvesterModel({{Illuminance{200}, average_power(Energy::millijoules(26.04), kCycle)},
                         {Illuminance{300}, average_power(Energy::millijoules(38.2), kCycle)},
                         {Illuminance{500}, average_power(Energy::millijoules(72.42), kCycle)}},
                        Voltage::millivolts(1200));
}

StorageElement cell(double soc = 0.5) { return StorageElement(10.0, Voltage::millivolts(3700), OcvCurve::default_liion(), soc); }

}  // namespace

TEST_CASE("storage capacity from charge and nominal voltage") {
  CHECK(cell().e_capacity().joules_f() == doctest::Approx(133.2).epsilon(1e-12));
  CHECK(cell(0.25).soc() == doctest::Approx(0.25));
  CHECK_THROWS(StorageElement(10.0, Voltage::millivolts(3700), OcvCurve::default_liion(), 1.5));
  CHECK_THROWS(StorageElement(-1.0, Voltage::millivolts(3700), OcvCurve::default_liion(), 0.5));
}

TEST_CASE("ocv interpolation") {
  auto s = cell();
  CHECK(ocv(s, 1.0) == Voltage::millivolts(4200));
  CHECK(ocv(s, 0.0) == Voltage::millivolts(2800));
  CHECK(ocv(s, 0.1) == Voltage::millivolts(3600));
  StorageElement two(10.0, Voltage::millivolts(3700),
                     OcvCurve({{0.0, Voltage::millivolts(3000)}, {1.0, Voltage::millivolts(4200)}}), 0.5);
  CHECK(ocv(two, 0.5) == Voltage::millivolts(3600));
  CHECK(two.v_store() == Voltage::millivolts(3600));
  CHECK_THROWS_AS(ocv(s, -0.01), std::domain_error);
  CHECK_THROWS_AS(ocv(s, 1.01), std::domain_error);
}

TEST_CASE("ocv is monotone and thresholds map back to unique soc") {
  auto c = OcvCurve::default_liion();
  double prev = 0.0;
  for (int k = 0; k <= 10000; ++k) {
    double v = c.microvolts_at(k / 10000.0);
    CHECK(v >= prev);
    prev = v;
  }
  for (std::int64_t mv = 2800; mv <= 4200; mv += 7) {
    Voltage v = Voltage::millivolts(mv);
    double soc = c.soc_reaching(v);
    CHECK(c.microvolts_at(soc) == doctest::Approx(static_cast<double>(v.uv)).epsilon(1e-12));
  }
  // Flat segment: reaching picks its start, not-exceeding its end.
  OcvCurve flat({{0.0, Voltage::millivolts(3000)}, {0.4, Voltage::millivolts(3600)}, {0.6, Voltage::millivolts(3600)},
                 {1.0, Voltage::millivolts(4000)}});
  CHECK(flat.soc_reaching(Voltage::millivolts(3600)) == doctest::Approx(0.4));
  CHECK(flat.soc_not_exceeding(Voltage::millivolts(3600)) == doctest::Approx(0.6));
  CHECK_THROWS_AS(c.soc_reaching(Voltage::millivolts(4300)), std::domain_error);
  CHECK_THROWS(OcvCurve({{0.0, Voltage::millivolts(3000)}, {0.5, Voltage::millivolts(2900)}, {1.0, Voltage::millivolts(4000)}}));
  CHECK_THROWS(OcvCurve({{0.1, Voltage::millivolts(3000)}, {1.0, Voltage::millivolts(4000)}}));
}

TEST_CASE("apply_net_power") {
  auto s = cell();
  s.set_energy(Energy::joules(1));
  auto r = apply_net_power(s, Power{}, Duration::s(1234));
  CHECK(r.storage.e_store().nj == Energy::joules(1).nj);

  s.set_energy(Energy::joules(0.5));
  r = apply_net_power(s, Power{-994.4}, Duration::s(600));
  using Big = boost::multiprecision::cpp_dec_float_50;
  Big want = Big("0.5e9") - Big("994.4") * Big(600);
  CHECK(r.storage.e_store().nj == doctest::Approx(want.convert_to<double>()).epsilon(1e-15));
  CHECK((Energy::joules(0.5) - r.storage.e_store()).mj() == doctest::Approx(0.59664).epsilon(1e-9));

  auto full = cell(0.999999);
  r = apply_net_power(full, Power::microwatts(1e6), Duration::s(10));
  CHECK(r.storage.e_store().nj == full.e_capacity().nj);
  CHECK(r.overflow.nj == doctest::Approx(1e10 - (full.e_capacity().nj - full.e_store().nj)));
  CHECK(r.underflow.nj == 0.0);

  auto empty = cell(0.0);
  r = apply_net_power(empty, Power{-10}, Duration::s(1));
  CHECK(r.storage.e_store().nj == 0.0);
  CHECK(r.underflow.nj == doctest::Approx(10.0));
  CHECK_THROWS_AS(apply_net_power(s, Power{}, Duration::us(-1)), std::domain_error);
}

TEST_CASE("harvest power calibration") {
  auto m = pv();
  CHECK(harvest_power(m, Illuminance{200}).nw / 1e3 == doctest::Approx(43.15).epsilon(1e-3));
  CHECK(harvest_power(m, Illuminance{0}).nw == 0.0);
  CHECK(harvest_power(m, Illuminance{500}).nw / 1e3 == doctest::Approx(119.99).epsilon(1e-4));
  CHECK(harvest_power(m, Illuminance{100}).nw == doctest::Approx(harvest_power(m, Illuminance{200}).nw / 2));
  // extrapolation continues the 300-500 segment
  double slope = (harvest_power(m, Illuminance{500}).nw - harvest_power(m, Illuminance{300}).nw) / 200.0;
  CHECK(harvest_power(m, Illuminance{700}).nw == doctest::Approx(harvest_power(m, Illuminance{500}).nw + 200 * slope));
  CHECK_THROWS_AS(harvest_power(m, Illuminance{-1}), std::domain_error);
  CHECK(harvester_voltage(m, Illuminance{0}) == Voltage{});
  CHECK(harvester_voltage(m, Illuminance{50}) == Voltage::millivolts(1200));

  double prev = 0.0;
  for (double lux = 0.0; lux <= 1000.0; lux += 0.25) {
    double p = harvest_power(m, Illuminance{lux}).nw;
    CHECK(p >= prev);
    prev = p;
  }
  CHECK_THROWS(HarvesterModel({{Illuminance{300}, Power{10}}, {Illuminance{200}, Power{20}}}, Voltage{}));
  CHECK_THROWS(HarvesterModel({{Illuminance{200}, Power{30}}, {Illuminance{300}, Power{20}}}, Voltage{}));
}

TEST_CASE("always-on budget") {
  AlwaysOnBudget b;
  CHECK(b.total() == Current::nanoamps(452));
  CHECK(always_on_power(b).nw == doctest::Approx(994.4).epsilon(1e-15));
  b.i_extra_leakage = Current{};
  CHECK(b.total() == Current::nanoamps(310));
  CHECK(always_on_power(b).nw == doctest::Approx(682.0).epsilon(1e-15));
  AlwaysOnBudget zero{Current{}, Current{}, Current{}, Current{}, Voltage::millivolts(2200)};
  CHECK(always_on_power(zero).nw == 0.0);
}

TEST_CASE("cycle energy") {
  auto script = LoadScript::thermal_comfort();
  CHECK(cycle_energy_measured(script, Energy::millijoules(0.6)).mj() == doctest::Approx(2.1462).epsilon(1e-12));
  CHECK(cycle_energy(script, AlwaysOnBudget{}, Duration::min(10)).mj() == doctest::Approx(2.146355204).epsilon(1e-12));
  CHECK(cycle_energy(LoadScript{}, AlwaysOnBudget{}, Duration::s(600)).mj() == doctest::Approx(0.59664).epsilon(1e-12));
  // software baseline: 3 uA stop mode for the whole 603.535 s
  Energy sw = cycle_energy(script, power_of(Voltage::millivolts(2200), Current::microamps(3)), Duration::min(10));
  CHECK(sw.mj() == doctest::Approx(1.1 + 0.0462 + 0.4 + 3.983331).epsilon(1e-9));
  CHECK(script.total_duration() == Duration::ms(3535));
  CHECK(script.total_energy().mj() == doctest::Approx(1.5462).epsilon(1e-12));
}

TEST_CASE("net gain per cycle") {
  auto m = pv();
  Energy table = Energy::millijoules(2.14);
  CHECK(net_gain(m, Illuminance{200}, table, kCycle).mj() == doctest::Approx(23.9).epsilon(1e-9));
  CHECK(net_gain(m, Illuminance{300}, table, kCycle).mj() == doctest::Approx(36.06).epsilon(1e-9));
  CHECK(net_gain(m, Illuminance{500}, table, kCycle).mj() == doctest::Approx(70.28).epsilon(1e-9));
}

TEST_CASE("load script validation") {
  LoadScript s{{{"bad", Duration::ms(-1), Energy{}, Rail::LV}}};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  LoadScript z{{{"burst", Duration{}, Energy{5}, Rail::LV}}};
  CHECK_THROWS_AS(z.validate(), std::invalid_argument);
  LoadScript ok{{{"idle", Duration{}, Energy{}, Rail::LV}}};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.steps[0].power().nw == 0.0);
  CHECK(LoadScript::thermal_comfort().steps[1].power().nw == doctest::Approx(1.32e6));
}

TEST_CASE("mcu step sized from the run-mode current") {
  auto step = mcu_run_step("MCU", 16.0, Duration::ms(35));
  // 37 uA/MHz x 16 MHz x 2.2 V x 35 ms, close to the measured 46.2 uJ
  CHECK(step.energy.nj / 1e3 == doctest::Approx(45.584).epsilon(1e-9));
  CHECK(step.energy.nj / 1e3 == doctest::Approx(46.2).epsilon(0.02));
  CHECK_THROWS(mcu_run_step("MCU", -1.0, Duration::ms(1)));
}
