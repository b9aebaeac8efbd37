#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "hdpm/quantities.hpp"

using namespace hdpm;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

// v[uV] * i[nA] * d[us] -> nJ, i.e. 1e-6 * 1e-9 * 1e-6 / 1e-9 = 1e-12.
Big exact_energy_nj(std::int64_t uv, std::int64_t na, std::int64_t us) {
  return Big(uv) * Big(na) * Big(us) / Big("1e12");
}

double rel(double got, const Big& want) {
  Big w = want;
  if (w == 0) return std::fabs(got);
  Big d = (Big(got) - w) / w;
  return std::fabs(d.convert_to<double>());
}

}  // namespace

TEST_CASE("power_of examples") {
  CHECK(power_of(Voltage::millivolts(2200), Current::nanoamps(452)).nw == doctest::Approx(994.4).epsilon(1e-15));
  CHECK(power_of(Voltage::millivolts(2200), Current::nanoamps(0)).nw == 0.0);
  CHECK(power_of(Voltage::millivolts(2200), Current::microamps(3)).nw == 6600.0);
}

TEST_CASE("power_of is within 1 ulp of the exact product") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> v(0, 10'000'000), i(0, 100'000'000);
  for (int k = 0; k < 5000; ++k) {
    std::int64_t uv = v(rng), na = i(rng);
    double got = power_of(Voltage{uv}, Current{na}).nw;
    Big want = Big(uv) * Big(na) / Big(1000000);
    double nearest = want.convert_to<double>();
    CHECK(std::fabs(got - nearest) <= std::numeric_limits<double>::epsilon() * std::fabs(nearest));
  }
}

TEST_CASE("power_of rejects negative inputs") {
  CHECK_THROWS_AS(power_of(Voltage{-1}, Current{1}), std::domain_error);
  CHECK_THROWS_AS(power_of(Voltage{1}, Current{-1}), std::domain_error);
}

TEST_CASE("energy_of examples") {
  CHECK(energy_of(Power{994.4}, Duration::s(600)).mj() == doctest::Approx(0.59664).epsilon(1e-12));
  CHECK(energy_of(Power{1234.5}, Duration{}).nj == 0.0);
  CHECK(energy_of(Power{6600}, Duration::s(600)).mj() == doctest::Approx(3.96).epsilon(1e-12));
  CHECK_THROWS_AS(energy_of(Power{1}, Duration::us(-1)), std::domain_error);
}

TEST_CASE("energy_of(power_of) matches arbitrary precision") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> v(1, 5'000'000), i(1, 10'000'000), d(1, 86'400'000'000LL);
  for (int k = 0; k < 5000; ++k) {
    std::int64_t uv = v(rng), na = i(rng), us = d(rng);
    double got = energy_of(power_of(Voltage{uv}, Current{na}), Duration::us(us)).nj;
    CHECK(rel(got, exact_energy_nj(uv, na, us)) < 1e-9);
  }
  // the always-on figure itself
  CHECK(rel(energy_of(power_of(Voltage::millivolts(2200), Current::nanoamps(452)), Duration::s(600)).nj,
            exact_energy_nj(2'200'000, 452, 600'000'000)) < 1e-15);
}

TEST_CASE("average_power inverts energy_of") {
  Energy e = Energy::millijoules(26.04);
  Duration d = Duration::ms(603535);
  CHECK(energy_of(average_power(e, d), d).nj == doctest::Approx(e.nj).epsilon(1e-14));
  CHECK(average_power(e, d).nw == doctest::Approx(43145.7993).epsilon(1e-8));
  CHECK_THROWS(average_power(e, Duration{}));
}

TEST_CASE("duration arithmetic is checked") {
  auto big = Duration::us(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + Duration::us(1), std::overflow_error);
  CHECK_THROWS_AS(Duration::us(std::numeric_limits<std::int64_t>::min()) - Duration::us(1), std::overflow_error);
  CHECK_THROWS_AS(Duration::min(std::numeric_limits<std::int64_t>::max() / 1000), std::overflow_error);
  CHECK_THROWS_AS(Duration::s(10) * std::numeric_limits<std::int64_t>::max(), std::overflow_error);
  CHECK(Duration::min(10) == Duration::s(600));
  CHECK(Duration::ms(1500).count() == 1'500'000);
}

TEST_CASE("time points stay non-negative") {
  CHECK_THROWS_AS(TimePoint::us(-1), std::domain_error);
  CHECK_THROWS_AS(TimePoint::zero() - Duration::us(1), std::domain_error);
  CHECK_THROWS_AS(TimePoint::us(std::numeric_limits<std::int64_t>::max()) + Duration::us(1), std::overflow_error);
  auto t = TimePoint::us(5);
  CHECK((t - TimePoint::us(7)).count() == -2);
}

TEST_CASE("duration addition is associative and time round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-1'000'000'000'000LL, 1'000'000'000'000LL);
  std::uniform_int_distribution<std::int64_t> t(0, 1'000'000'000'000LL);
  for (int k = 0; k < 10000; ++k) {
    auto a = Duration::us(d(rng)), b = Duration::us(d(rng)), c = Duration::us(d(rng));
    CHECK((a + b) + c == a + (b + c));
    auto tp = TimePoint::us(t(rng));
    auto step = Duration::us(std::abs(d(rng)));
    CHECK(tp + step - step == tp);
  }
}

TEST_CASE("energy accumulation is order independent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p(0.0, 2e6);
  std::uniform_int_distribution<std::int64_t> d(1, 3'600'000'000LL);
  std::vector<Energy> parts;
  for (int k = 0; k < 1000; ++k) parts.push_back(energy_of(Power{p(rng)}, Duration::us(d(rng))));
  auto sum = [](const std::vector<Energy>& v) {
    Energy e;
    for (auto x : v) e += x;
    return e.nj;
  };
  double base = sum(parts);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(parts.begin(), parts.end(), rng);
    CHECK(std::fabs(sum(parts) - base) <= 1e-9 * base);
  }
}

TEST_CASE("voltage construction rounds to the microvolt grid") {
  CHECK(Voltage::volts(2.2).uv == 2'200'000);
  CHECK(Voltage::volts(3.6).uv == 3'600'000);
  CHECK(Voltage::millivolts(300).uv == 300'000);
  CHECK(to_string(Voltage::millivolts(2200)) == "2.2 V");
}
