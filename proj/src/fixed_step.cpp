/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/fixed_step.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hdpm {

namespace {

class Integrator {
 public:
  Integrator(const Scenario& sc, Duration h) : sc_(sc), h_(h) {
    if (h.count() <= 0) throw std::domain_error("fixed-step integrator: step must be positive");
    sc_.validate();
    storage_ = sc_.make_storage();
    e_initial_ = storage_.e_store();
    end_ = TimePoint::at(sc_.duration);
    lux_ = sc_.light.front().lux;
    Voltage v = storage_.v_store();
    if (v >= sc_.pmic.v_ovch) mode_ = PmicMode::overcharge();
    else if (v >= sc_.pmic.v_chrdy) mode_ = PmicMode::normal();
    else mode_ = PmicMode::deep_sleep();
    next_alarm_ = sc_.rtc.first_alarm;
    for (ModeKind k : kAllModes) ledger_.time_in_mode[k] = Duration{};
    settle();
  }

  Report run() {
    while (now_ < end_) {
      TimePoint next = std::min(now_ + h_, end_);
      integrate(next - now_);
      now_ = next;
      if (now_ >= end_) break;
      while (fire_next_due()) settle();
      settle();
    }
    Report r;
    r.scenario = sc_;
    r.ledger = ledger_;
    for (std::size_t i = 0; i < names_.size(); ++i) r.ledger.e_consumed_by_component[names_[i]] = Energy{consumed_[i]};
    r.transitions = transitions_;
    r.e_initial = e_initial_;
    r.e_final = storage_.e_store();
    r.final_soc = storage_.soc();
    r.final_v = storage_.v_store();
    r.final_mode = mode_.kind();
    r.end = now_;
    return r;
  }

 private:
  bool stage2() const { return operating_stage(mode_.kind(), latch_.set) == Stage::Stage2; }

  std::size_t component(const std::string& name) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end()) return static_cast<std::size_t>(it - names_.begin());
    names_.push_back(name);
    consumed_.push_back(0.0);
    return names_.size() - 1;
  }

  void refresh_loads() {
    bool awake = !mode_.is(ModeKind::DeepSleep);
    harv_ = awake ? harvest_power(sc_.harvester, lux_).nw : 0.0;
    accepted_ = mode_.is(ModeKind::Overcharge) ? 0.0 : harv_;
    loads_.clear();
    if (awake) {
      Voltage rail = sc_.ao_rail_voltage;
      if (sc_.dpm.kind == DpmVariantKind::HardwareGated) {
        loads_.emplace_back(component("PMIC"), power_of(rail, sc_.pmic.i_quiescent).nw);
        loads_.emplace_back(component("RTC"), power_of(rail, sc_.rtc.i_quiescent).nw);
        loads_.emplace_back(component("Touch sensor"), power_of(rail, sc_.touch.i_quiescent).nw);
        loads_.emplace_back(component("Leakage"), power_of(rail, sc_.i_extra_leakage).nw);
      } else {
        loads_.emplace_back(component("MCU stop-mode idle"), power_of(rail, sc_.dpm.i_sleep).nw);
      }
    }
    if (step_) {
      const auto& s = sc_.load_script.steps[*step_];
      loads_.emplace_back(component(s.name), s.power().nw);
    }
    drain_ = 0.0;
    for (const auto& l : loads_) drain_ += l.second;
  }

  void integrate(Duration dt) {
    double span = dt.seconds();
    double harv = harv_;
    double accepted = accepted_;
    double drain = drain_;

    double e = storage_.e_store().nj;
    double cap = storage_.e_capacity().nj;
    double after = e + (accepted - drain) * span;
    double scale = 1.0;
    if (after < 0.0) {
      // Whatever the store and the harvester can provide is shared pro rata.
      scale = drain > 0.0 ? (e + accepted * span) / (drain * span) : 0.0;
      after = 0.0;
    } else if (after > cap) {
      ledger_.e_overcharge_discarded += Energy{after - cap};
      after = cap;
    }
    for (const auto& [idx, p] : loads_) consumed_[idx] += p * span * scale;
    ledger_.e_harvested += Energy{harv * span};
    if (mode_.is(ModeKind::Overcharge)) ledger_.e_overcharge_discarded += Energy{harv * span};
    storage_.set_energy(Energy{after});
    ledger_.time_in_mode[mode_.kind()] += dt;
  }

  // Applies the earliest scripted event that is due by now. Returns false when none is.
  bool fire_next_due() {
    struct Due {
      TimePoint t;
      int priority;
      int which;
    };
    std::array<Due, 5> due;
    std::size_t n = 0;
    if (next_alarm_ && *next_alarm_ <= now_) due[n++] = {*next_alarm_, 0, 0};
    if (touch_idx_ < sc_.touch.press_times.size() && sc_.touch.press_times[touch_idx_] <= now_)
      due[n++] = {sc_.touch.press_times[touch_idx_], 1, 1};
    if (step_ && step_end_ <= now_) due[n++] = {step_end_, 2, 2};
    if (light_idx_ < sc_.light.size() && sc_.light[light_idx_].time <= now_)
      due[n++] = {sc_.light[light_idx_].time, 5, 5};
    if (clear_pending_) due[n++] = {clear_at_, 6, 6};
    if (n == 0) return false;
    dirty_ = true;
    auto first = *std::min_element(due.begin(), due.begin() + n, [](const Due& a, const Due& b) {
      return a.t != b.t ? a.t < b.t : a.priority < b.priority;
    });
    bool ao = !mode_.is(ModeKind::DeepSleep);
    switch (first.which) {
      case 0: {
        TimePoint at = *next_alarm_;
        next_alarm_ = at + sc_.rtc.alarm_period;
        if (ao) latch_ = on_rtc_alarm(latch_, now_, sc_.rtc).first;
        break;
      }
      case 1:
        ++touch_idx_;
        if (ao) latch_ = on_touch(latch_, now_);
        break;
      case 2:
        if (*step_ + 1 < sc_.load_script.steps.size()) {
          step_ = *step_ + 1;
          step_end_ = now_ + sc_.load_script.steps[*step_].duration;
        } else {
          step_.reset();
          clear_pending_ = true;
          clear_at_ = now_;
        }
        break;
      case 5:
        lux_ = sc_.light[light_idx_].lux;
        ++light_idx_;
        break;
      case 6:
        if (!stage2()) throw std::logic_error("fixed-step: clear with the MCU unpowered");
        latch_ = mcu_clear(latch_, {ClearVia::I2cCommand, now_}).latch;
        clear_pending_ = false;
        ++ledger_.cycles_completed;
        if (sc_.rtc.rearm == RtcRearm::OnClear) next_alarm_ = now_ + sc_.rtc.alarm_period;
        break;
    }
    return true;
  }

  void settle() {
    for (int i = 0; i < 16; ++i) {
      PmicInputs in{storage_.v_store(), harvester_voltage(sc_.harvester, lux_), harvest_power(sc_.harvester, lux_),
                    latch_.set, now_};
      PmicMode next = step_mode(mode_, sc_.pmic, in);
      if (next == mode_) break;
      transitions_.push_back({now_, mode_.kind(), next.kind()});
      dirty_ = true;
      mode_ = next;
      if (mode_.is(ModeKind::Shutdown) && (step_ || clear_pending_)) {
        step_.reset();
        clear_pending_ = false;
        latch_ = LatchState{false, WakeSource::None, now_};
      }
      if (mode_.is(ModeKind::DeepSleep)) latch_ = LatchState{false, WakeSource::None, now_};
    }
    if (stage2() && !step_ && !clear_pending_) {
      if (sc_.load_script.steps.empty()) {
        clear_pending_ = true;
        clear_at_ = now_;
      } else {
        step_ = 0;
        dirty_ = true;
        step_end_ = now_ + sc_.load_script.steps[0].duration;
      }
    }
    if (dirty_) refresh_loads();
    dirty_ = false;
  }

  Scenario sc_;
  Duration h_;
  TimePoint now_;
  TimePoint end_;
  StorageElement storage_;
  Energy e_initial_;
  PmicMode mode_ = PmicMode::deep_sleep();
  LatchState latch_;
  Illuminance lux_;
  std::optional<TimePoint> next_alarm_;
  std::size_t touch_idx_ = 0;
  std::size_t light_idx_ = 1;
  std::optional<std::size_t> step_;
  TimePoint step_end_;
  bool clear_pending_ = false;
  TimePoint clear_at_;
  Ledger ledger_;
  std::vector<std::string> names_;
  std::vector<double> consumed_;
  std::vector<std::pair<std::size_t, double>> loads_;
  double harv_ = 0.0;
  double accepted_ = 0.0;
  double drain_ = 0.0;
  bool dirty_ = true;
  std::vector<ModeTransition> transitions_;
};

}  // namespace

Report run_fixed_step(const Scenario& scenario, Duration step) { return Integrator(scenario, step).run(); }

}  // namespace hdpm
