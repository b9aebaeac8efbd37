#include <doctest.h>

#include <tuple>

#include "hdpm/wake.hpp"
#include "properties.hpp"

using namespace hdpm;

TEST_CASE("touch sets the latch") {
  LatchState clear;
  auto l = on_touch(clear, TimePoint::us(5));
  CHECK(l == LatchState{true, WakeSource::Touch, TimePoint::us(5)});

  LatchState rtc{true, WakeSource::Rtc, TimePoint::us(1)};
  CHECK(on_touch(rtc, TimePoint::us(9)) == LatchState{true, WakeSource::Touch, TimePoint::us(9)});

  LatchState touched{true, WakeSource::Touch, TimePoint::us(1)};
  auto again = on_touch(touched, TimePoint::us(4));
  CHECK(again.set);
  CHECK(again.wake_source == WakeSource::Touch);
  CHECK(again.last_change == TimePoint::us(4));

  CHECK_THROWS_AS(on_touch(touched, TimePoint::zero()), std::logic_error);
}

TEST_CASE("rtc alarm sets the latch and yields the next alarm") {
  RtcConfig rtc;
  auto [l, next] = on_rtc_alarm(LatchState{}, TimePoint::at(Duration::s(600)), rtc);
  CHECK(l == LatchState{true, WakeSource::Rtc, TimePoint::at(Duration::s(600))});
  CHECK(next == TimePoint::at(Duration::s(1200)));

  LatchState touched{true, WakeSource::Touch, TimePoint::zero()};
  auto [l2, n2] = on_rtc_alarm(touched, TimePoint::us(7), rtc);
  CHECK(l2.set);
  CHECK(l2.wake_source == WakeSource::Rtc);
  (void)n2;

  TimePoint t = rtc.first_alarm;
  std::vector<std::int64_t> seen;
  LatchState cur;
  for (int k = 0; k < 4; ++k) {
    seen.push_back(t.count());
    std::tie(cur, t) = on_rtc_alarm(cur, t, rtc);
  }
  CHECK(seen == std::vector<std::int64_t>{0, 600'000'000, 1'200'000'000, 1'800'000'000});
}

TEST_CASE("mcu clear via either path") {
  LatchState set{true, WakeSource::Rtc, TimePoint::zero()};
  auto a = mcu_clear(set, {ClearVia::I2cCommand, TimePoint::us(3)});
  auto b = mcu_clear(set, {ClearVia::SwDisSignal, TimePoint::us(3)});
  CHECK_FALSE(a.latch.set);
  CHECK(a.latch.wake_source == WakeSource::None);
  CHECK_FALSE(a.anomalous);
  CHECK(a.latch == b.latch);

  auto n = mcu_clear(LatchState{}, {ClearVia::I2cCommand, TimePoint::us(3)});
  CHECK_FALSE(n.latch.set);
  CHECK(n.anomalous);
}

TEST_CASE("wake source readout") {
  CHECK(read_wake_source(on_touch(LatchState{}, TimePoint::zero())) == WakeSource::Touch);
  CHECK(read_wake_source(on_rtc_alarm(LatchState{}, TimePoint::zero(), RtcConfig{}).first) == WakeSource::Rtc);
  auto cleared = mcu_clear(on_touch(LatchState{}, TimePoint::zero()), {ClearVia::I2cCommand, TimePoint::zero()});
  CHECK(read_wake_source(cleared.latch) == WakeSource::None);
}

TEST_CASE("orchestrator rejects an unpowered clear and records no-op clears") {
  WakeOrchestrator w;
  w.touch(TimePoint::us(1));
  CHECK_THROWS_AS(w.clear({ClearVia::I2cCommand, TimePoint::us(2)}, false), std::logic_error);
  CHECK(w.latch().set);
  w.clear({ClearVia::I2cCommand, TimePoint::us(3)}, true);
  CHECK_FALSE(w.latch().set);
  w.clear({ClearVia::SwDisSignal, TimePoint::us(4)}, false);
  REQUIRE(w.anomalies().size() == 1);
}

TEST_CASE("touch after rtc at the same instant reports touch") {
  WakeOrchestrator w;
  TimePoint t = TimePoint::us(100);
  w.rtc_alarm(t, RtcConfig{});
  w.touch(t);
  CHECK(w.latch().set);
  CHECK(read_wake_source(w.latch()) == WakeSource::Touch);
}

TEST_CASE("randomized latch streams") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto t = props::latch_random(seed, 20000);
    INFO(t.first);
    CHECK(t.violations == 0);
  }
}
