/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hdpm {

std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::RtcAlarm: return "RtcAlarm";
    case EventKind::TouchPress: return "TouchPress";
    case EventKind::LoadStepComplete: return "LoadStepComplete";
    case EventKind::ThresholdCross: return "ThresholdCross";
    case EventKind::ShutdownGraceExpire: return "ShutdownGraceExpire";
    case EventKind::LightChange: return "LightChange";
    case EventKind::McuClearLatch: return "McuClearLatch";
    case EventKind::SimEnd: return "SimEnd";
  }
  return "?";
}

std::string_view crossing_name(Crossing c) {
  switch (c) {
    case Crossing::ChrdyUp: return "ChrdyUp";
    case Crossing::ChrdyDown: return "ChrdyDown";
    case Crossing::OvchUp: return "OvchUp";
    case Crossing::OvchDown: return "OvchDown";
    case Crossing::ColdStart: return "ColdStart";
  }
  return "?";
}

Energy Ledger::total_consumed() const {
  Energy e;
  for (const auto& [_, v] : e_consumed_by_component) e += v;
  return e;
}

Duration Ledger::total_time() const {
  Duration d;
  for (const auto& [_, v] : time_in_mode) d += v;
  return d;
}

double Report::conservation_residual() const {
  return ledger.e_harvested.nj - ledger.total_consumed().nj - ledger.e_overcharge_discarded.nj -
         (e_final.nj - e_initial.nj);
}

double Report::conservation_relative_error() const {
  double scale = std::max({1.0, ledger.e_harvested.nj, ledger.total_consumed().nj, std::abs(e_final.nj - e_initial.nj),
                           ledger.e_overcharge_discarded.nj});
  return std::abs(conservation_residual()) / scale;
}

PmicMode initial_mode(const PmicConfig& cfg, Voltage v_store) {
  if (v_store >= cfg.v_ovch) return PmicMode::overcharge();
  if (v_store >= cfg.v_chrdy) return PmicMode::normal();
  return PmicMode::deep_sleep();
}

namespace {
bool is_singleton(EventKind k) {
  return k != EventKind::TouchPress && k != EventKind::LightChange && k != EventKind::SimEnd;
}

std::string lux_label(Illuminance lux) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "LightChange(%g)", lux.lux);
  return buf;
}
}  // namespace

Engine::Engine(Scenario scenario) : sc_(std::move(scenario)) {
  sc_.validate();
  st_.storage = sc_.make_storage();
  e_initial_ = st_.storage.e_store();
  end_ = TimePoint::at(sc_.duration);
  st_.lux = sc_.light.front().lux;
  st_.mode = initial_mode(sc_.pmic, st_.storage.v_store());
  for (ModeKind k : kAllModes) st_.ledger.time_in_mode[k] = Duration{};

  for (std::size_t i = 1; i < sc_.light.size(); ++i) {
    Event ev{sc_.light[i].time, EventKind::LightChange};
    ev.lux = sc_.light[i].lux;
    schedule(ev);
  }
  for (auto t : sc_.touch.press_times) schedule({t, EventKind::TouchPress});
  schedule({sc_.rtc.first_alarm, EventKind::RtcAlarm});
  schedule({end_, EventKind::SimEnd});

  open_.index = 0;
  open_.start = st_.now;

  settle(st_.storage.v_store());
  reschedule_crossing();
  record("Start");
}

void Engine::schedule(Event ev) {
  // A re-schedule supersedes the pending event even when the new one falls
  // past the end of the run.
  if (is_singleton(ev.kind)) cancel(ev.kind);
  if (ev.kind != EventKind::SimEnd && ev.time >= end_) return;
  ev.seq = seq_++;
  if (is_singleton(ev.kind)) single_[ev.kind] = ev;
  st_.queue.insert(ev);
}

void Engine::cancel(EventKind kind) {
  auto it = single_.find(kind);
  if (it == single_.end()) return;
  st_.queue.erase(it->second);
  single_.erase(it);
}

TimePoint Engine::next_event_time() const {
  return st_.queue.empty() ? end_ : st_.queue.begin()->time;
}

Power Engine::harvest() const {
  if (st_.mode.is(ModeKind::DeepSleep)) return {};
  return harvest_power(sc_.harvester, st_.lux);
}

std::vector<std::pair<std::string, Power>> Engine::drains() const {
  std::vector<std::pair<std::string, Power>> out;
  if (rails_for(st_.mode.kind(), st_.wake.latch().set).ao_out) {
    Voltage rail = sc_.ao_rail_voltage;
    if (sc_.dpm.kind == DpmVariantKind::HardwareGated) {
      out.emplace_back("PMIC", power_of(rail, sc_.pmic.i_quiescent));
      out.emplace_back("RTC", power_of(rail, sc_.rtc.i_quiescent));
      out.emplace_back("Touch sensor", power_of(rail, sc_.touch.i_quiescent));
      out.emplace_back("Leakage", power_of(rail, sc_.i_extra_leakage));
    } else {
      out.emplace_back("MCU stop-mode idle", power_of(rail, sc_.dpm.i_sleep));
    }
  }
  if (st_.script) {
    const auto& step = sc_.load_script.steps[st_.script->step];
    out.emplace_back(step.name, step.power());
  }
  return out;
}

Power Engine::net_power() const {
  Power accepted = st_.mode.is(ModeKind::Overcharge) ? Power{} : harvest();
  Power drain;
  for (const auto& [_, p] : drains()) drain = drain + p;
  return accepted - drain;
}

void Engine::advance_to(TimePoint t) {
  if (t < st_.now) throw std::logic_error("advance_to: target time is in the past");
  if (next_event_time() < t) throw std::logic_error("advance_to: would skip a queued event");
  Duration dt = t - st_.now;
  if (dt.count() == 0) return;

  const double span_s = dt.seconds();
  Power harv = harvest();
  bool overcharge = st_.mode.is(ModeKind::Overcharge);
  Power accepted = overcharge ? Power{} : harv;
  auto loads = drains();
  double drain_nw = 0.0;
  for (const auto& [_, p] : loads) drain_nw += p.nw;
  Power p_net{accepted.nw - drain_nw};

  auto applied = apply_net_power(st_.storage, p_net, dt);
  double served_s = span_s;  // seconds of full-drain equivalent delivered
  if (applied.underflow.nj > 0.0) {
    // Loads run at full draw until the store empties, then only on what the
    // harvester supplies.
    double t_empty = st_.storage.e_store().nj / (drain_nw - accepted.nw);
    double share = drain_nw > 0.0 ? accepted.nw / drain_nw : 0.0;
    served_s = t_empty + share * (span_s - t_empty);
    if (!depleted_) anomaly("storage depleted at t=" + std::to_string((st_.now + Duration::us(std::llround(t_empty * 1e6))).count()) + "us; loads browned out");
    depleted_ = true;
  } else if (p_net.nw > 0.0) {
    depleted_ = false;
  }
  for (const auto& [name, p] : loads) st_.ledger.e_consumed_by_component[name] += Energy{p.nw * served_s};
  st_.ledger.e_harvested += energy_of(harv, dt);
  if (overcharge) st_.ledger.e_overcharge_discarded += energy_of(harv, dt);
  st_.ledger.e_overcharge_discarded += applied.overflow;
  st_.storage = applied.storage;
  st_.ledger.time_in_mode[st_.mode.kind()] += dt;
  st_.now = t;
}

std::optional<TimePoint> Engine::find_threshold_crossing(Voltage v_target, Direction dir) const {
  const auto& s = st_.storage;
  // On the truncated microvolt grid, v <= n holds until the curve reaches n + 1.
  Energy target = s.energy_reaching(v_target);
  if (dir == Direction::FallingTo) {
    if (v_target < s.curve().empty() || v_target > s.curve().full())
      throw std::domain_error("crossing target outside the OCV range");
    target = v_target < s.curve().full() ? s.energy_reaching(v_target + Voltage{1}) : s.e_capacity();
  }
  Power p = net_power();
  if (p.nw == 0.0) return std::nullopt;
  bool rising = dir == Direction::Rising;
  if (rising != (p.nw > 0.0)) return std::nullopt;
  double diff = target.nj - s.e_store().nj;
  if (rising ? diff <= 0.0 : diff >= 0.0) return st_.now;
  double dt_us = diff / p.nw * 1e6;
  // First grid instant at which the condition holds: reaching a level can
  // happen on the solved instant, falling strictly below it only after.
  double r = std::round(dt_us);
  bool on_grid = std::abs(dt_us - r) <= 1e-9 * std::max(1.0, dt_us);
  double steps = dir == Direction::FallingBelow ? (on_grid ? r + 1.0 : std::ceil(dt_us))
                                                : (on_grid ? r : std::ceil(dt_us));
  double horizon = static_cast<double>((next_event_time() - st_.now).count());
  if (steps > horizon) return std::nullopt;
  return st_.now + Duration::us(static_cast<std::int64_t>(steps));
}

void Engine::reschedule_crossing() {
  cancel(EventKind::ThresholdCross);
  if (done_) return;
  const auto& cfg = sc_.pmic;
  std::optional<std::pair<Crossing, std::optional<TimePoint>>> pick;
  double p = net_power().nw;
  switch (st_.mode.kind()) {
    case ModeKind::DeepSleep:
      break;
    case ModeKind::WakeUp:
    case ModeKind::Shutdown:
      pick = {{Crossing::ChrdyUp, find_threshold_crossing(cfg.v_chrdy, Direction::Rising)}};
      break;
    case ModeKind::Normal:
      if (p > 0.0) pick = {{Crossing::OvchUp, find_threshold_crossing(cfg.v_ovch, Direction::Rising)}};
      else if (p < 0.0) pick = {{Crossing::ChrdyDown, find_threshold_crossing(cfg.v_chrdy, Direction::FallingBelow)}};
      break;
    case ModeKind::Overcharge:
      pick = {{Crossing::OvchDown, find_threshold_crossing(cfg.v_ovch - cfg.v_ovch_hysteresis, Direction::FallingTo)}};
      break;
  }
  if (pick && pick->second) {
    Event ev{*pick->second, EventKind::ThresholdCross};
    ev.crossing = pick->first;
    schedule(ev);
  }
}

void Engine::settle(Voltage v_eval) {
  for (int i = 0; i < 16; ++i) {
    PmicInputs in{v_eval, harvester_voltage(sc_.harvester, st_.lux), harvest_power(sc_.harvester, st_.lux),
                  st_.wake.latch().set, st_.now};
    PmicMode next = step_mode(st_.mode, sc_.pmic, in);
    if (next == st_.mode) {
      maybe_start_script();
      return;
    }
    enter(next);
  }
  throw std::logic_error("mode transitions did not settle at t=" + std::to_string(st_.now.count()) + "us");
}

void Engine::enter(const PmicMode& next) {
  ModeKind from = st_.mode.kind();
  transitions_.push_back({st_.now, from, next.kind()});
  if (from == ModeKind::Shutdown) cancel(EventKind::ShutdownGraceExpire);
  st_.mode = next;
  switch (next.kind()) {
    case ModeKind::Shutdown:
      schedule({next.grace_deadline(), EventKind::ShutdownGraceExpire});
      if (st_.script || st_.clear_pending) abort_script("storage fell below V_CHRDY");
      break;
    case ModeKind::DeepSleep:
      st_.wake.power_loss_reset(st_.now);
      break;
    default:
      break;
  }
}

void Engine::maybe_start_script() {
  if (stage() != Stage::Stage2 || st_.script || st_.clear_pending) return;
  close_cycle();
  open_cycle();
  if (sc_.load_script.steps.empty()) {
    st_.clear_pending = true;
    schedule({st_.now, EventKind::McuClearLatch});
  } else {
    start_step(0);
  }
}

void Engine::start_step(std::size_t index) {
  st_.script = ScriptProgress{index, st_.now};
  schedule({st_.now + sc_.load_script.steps[index].duration, EventKind::LoadStepComplete});
}

void Engine::abort_script(const std::string& why) {
  std::string what = st_.script ? "load step '" + sc_.load_script.steps[st_.script->step].name + "'" : "latch clear";
  anomaly(what + " aborted at t=" + std::to_string(st_.now.count()) + "us (" + why +
          "); energy charged pro rata; switched domain lost its latch");
  cancel(EventKind::LoadStepComplete);
  cancel(EventKind::McuClearLatch);
  st_.script.reset();
  st_.clear_pending = false;
  st_.wake.power_loss_reset(st_.now);
}

void Engine::dispatch(const Event& ev) {
  if (ev.time != st_.now) throw std::logic_error("dispatch: event time differs from current time");
  Voltage v_eval = st_.storage.v_store();
  std::string label(event_kind_name(ev.kind));
  bool ao_on = rails_for(st_.mode.kind(), st_.wake.latch().set).ao_out;

  switch (ev.kind) {
    case EventKind::RtcAlarm:
      schedule({st_.now + sc_.rtc.alarm_period, EventKind::RtcAlarm});
      if (!ao_on) {
        label += " (unpowered)";
        break;
      }
      if (st_.script || st_.clear_pending) label += " (Stage2 already active)";
      st_.wake.rtc_alarm(st_.now, sc_.rtc);
      if (st_.mode.is(ModeKind::Shutdown) || st_.mode.is(ModeKind::WakeUp))
        label += " (latched; LV_OUT waits for Normal)";
      break;
    case EventKind::TouchPress:
      if (!ao_on) {
        label += " (unpowered)";
        break;
      }
      if (st_.script || st_.clear_pending) label += " (recorded; script already running)";
      st_.wake.touch(st_.now);
      break;
    case EventKind::LoadStepComplete: {
      if (!st_.script) throw std::logic_error("LoadStepComplete with no active load step");
      std::size_t idx = st_.script->step;
      label += "(" + sc_.load_script.steps[idx].name + ")";
      if (idx + 1 < sc_.load_script.steps.size()) {
        start_step(idx + 1);
      } else {
        st_.script.reset();
        st_.clear_pending = true;
        schedule({st_.now, EventKind::McuClearLatch});
      }
      break;
    }
    case EventKind::ThresholdCross: {
      label += "(" + std::string(crossing_name(ev.crossing)) + ")";
      const auto& cfg = sc_.pmic;
      Voltage target;
      switch (ev.crossing) {
        case Crossing::ChrdyUp:
        case Crossing::ChrdyDown: target = cfg.v_chrdy; break;
        case Crossing::OvchUp: target = cfg.v_ovch; break;
        case Crossing::OvchDown: target = cfg.v_ovch - cfg.v_ovch_hysteresis; break;
        case Crossing::ColdStart: target = v_eval; break;
      }
      max_crossing_error_uv_ = std::max(max_crossing_error_uv_, std::abs(static_cast<double>((v_eval - target).uv)));
      // The crossing is the guard firing: evaluate at the boundary on the side
      // the storage is heading to.
      switch (ev.crossing) {
        case Crossing::ChrdyUp:
        case Crossing::OvchUp: v_eval = std::max(v_eval, target); break;
        case Crossing::ChrdyDown: v_eval = std::min(v_eval, target - Voltage::microvolts(1)); break;
        case Crossing::OvchDown: v_eval = std::min(v_eval, target); break;
        case Crossing::ColdStart: break;
      }
      break;
    }
    case EventKind::ShutdownGraceExpire:
      if (!st_.mode.is(ModeKind::Shutdown)) throw std::logic_error("ShutdownGraceExpire outside Shutdown");
      break;
    case EventKind::LightChange:
      st_.lux = ev.lux;
      label = lux_label(ev.lux);
      break;
    case EventKind::McuClearLatch:
      st_.wake.clear({ClearVia::I2cCommand, st_.now}, stage() == Stage::Stage2);
      if (st_.clear_pending) {
        st_.clear_pending = false;
        ++st_.ledger.cycles_completed;
        open_.script_completed = true;
      }
      if (sc_.rtc.rearm == RtcRearm::OnClear) schedule({st_.now + sc_.rtc.alarm_period, EventKind::RtcAlarm});
      break;
    case EventKind::SimEnd:
      done_ = true;
      break;
  }

  if (!done_) {
    settle(v_eval);
    reschedule_crossing();
  }
  record(label);
}

bool Engine::step() {
  if (done_) return false;
  if (st_.queue.empty()) throw std::logic_error("event queue drained before SimEnd");
  Event ev = *st_.queue.begin();
  st_.queue.erase(st_.queue.begin());
  auto it = single_.find(ev.kind);
  if (it != single_.end() && it->second.seq == ev.seq) single_.erase(it);
  try {
    advance_to(ev.time);
    dispatch(ev);
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string(e.what()) + " [while handling " + std::string(event_kind_name(ev.kind)) +
                            " at t=" + std::to_string(ev.time.count()) + "us]");
  } catch (const std::logic_error& e) {
    throw std::logic_error(std::string(e.what()) + " [while handling " + std::string(event_kind_name(ev.kind)) +
                           " at t=" + std::to_string(ev.time.count()) + "us]");
  }
  return !done_;
}

void Engine::open_cycle() {
  open_ = CycleSummary{};
  open_.index = next_cycle_++;
  open_.start = st_.now;
  open_consumed_at_start_ = st_.ledger.total_consumed();
  open_harvested_at_start_ = st_.ledger.e_harvested;
  open_components_at_start_ = st_.ledger.e_consumed_by_component;
}

void Engine::close_cycle() {
  open_.length = st_.now - open_.start;
  if (open_.length.count() == 0) return;
  open_.consumed = st_.ledger.total_consumed() - open_consumed_at_start_;
  open_.harvested = st_.ledger.e_harvested - open_harvested_at_start_;
  open_.end_soc = st_.storage.soc();
  for (const auto& [name, e] : st_.ledger.e_consumed_by_component) {
    auto it = open_components_at_start_.find(name);
    open_.by_component[name] = e - (it == open_components_at_start_.end() ? Energy{} : it->second);
  }
  cycles_.push_back(open_);
}

void Engine::record(const std::string& what) {
  std::string step = st_.script ? sc_.load_script.steps[st_.script->step].name : std::string();
  trace_.push_back({st_.now, what, st_.mode.kind(), st_.wake.latch().set, st_.storage.v_store(),
                    st_.storage.e_store(), std::move(step)});
}

void Engine::anomaly(const std::string& what) { st_.ledger.anomalies.push_back(what); }

Report Engine::finish() {
  while (step()) {
  }
  close_cycle();
  Report r;
  r.scenario = sc_;
  r.ledger = st_.ledger;
  for (const auto& a : st_.wake.anomalies()) r.ledger.anomalies.push_back(a);
  r.trace = trace_;
  r.transitions = transitions_;
  r.cycles = cycles_;
  r.e_initial = e_initial_;
  r.e_final = st_.storage.e_store();
  r.final_soc = st_.storage.soc();
  r.final_v = st_.storage.v_store();
  r.final_mode = st_.mode.kind();
  r.end = st_.now;
  r.max_crossing_error_uv = max_crossing_error_uv_;
  return r;
}

Report run(const Scenario& scenario) { return Engine(scenario).finish(); }

}  // namespace hdpm
