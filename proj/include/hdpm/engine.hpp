/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_ENGINE_HPP
#define HDPM_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdpm/energy.hpp"
#include "hdpm/pmic.hpp"
#include "hdpm/scenario.hpp"
#include "hdpm/wake.hpp"

namespace hdpm {

// Declaration order is the tie-break priority for events at the same instant.
enum class EventKind {
  RtcAlarm,
  TouchPress,
  LoadStepComplete,
  ThresholdCross,
  ShutdownGraceExpire,
  LightChange,
  McuClearLatch,
  SimEnd,
};

enum class Crossing { ChrdyUp, ChrdyDown, OvchUp, OvchDown, ColdStart };

std::string_view event_kind_name(EventKind k);
std::string_view crossing_name(Crossing c);

struct Event {
  TimePoint time;
  EventKind kind = EventKind::SimEnd;
  std::uint64_t seq = 0;
  Crossing crossing = Crossing::ChrdyUp;  // ThresholdCross only
  Illuminance lux{};                      // LightChange only

  bool operator<(const Event& o) const {
    if (time != o.time) return time < o.time;
    if (kind != o.kind) return kind < o.kind;
    return seq < o.seq;
  }
};

struct Ledger {
  Energy e_harvested;
  std::map<std::string, Energy> e_consumed_by_component;
  Energy e_overcharge_discarded;
  std::map<ModeKind, Duration> time_in_mode;
  std::int64_t cycles_completed = 0;
  std::vector<std::string> anomalies;

  Energy total_consumed() const;
  Duration total_time() const;
};

struct TraceRecord {
  TimePoint time;
  std::string event;
  ModeKind mode = ModeKind::DeepSleep;
  bool latch = false;
  Voltage v_store;
  Energy e_store;
  std::string active_step;  // empty when no load step runs
};

struct ModeTransition {
  TimePoint time;
  ModeKind from;
  ModeKind to;
  bool operator==(const ModeTransition&) const = default;
};

/* One wake-to-wake span. Cycle 0 is the span before the first wake. */
struct CycleSummary {
  std::int64_t index = 0;
  TimePoint start;
  Duration length;
  Energy consumed;
  Energy harvested;
  double end_soc = 0.0;
  bool script_completed = false;
  std::map<std::string, Energy> by_component;

  Energy net() const { return harvested - consumed; }
};

struct Report {
  Scenario scenario;
  Ledger ledger;
  std::vector<TraceRecord> trace;
  std::vector<ModeTransition> transitions;
  std::vector<CycleSummary> cycles;
  Energy e_initial;
  Energy e_final;
  double final_soc = 0.0;
  Voltage final_v;
  ModeKind final_mode = ModeKind::DeepSleep;
  TimePoint end;
  double max_crossing_error_uv = 0.0;

  /// harvested - consumed - discarded - (final - initial), nJ.
  double conservation_residual() const;
  /// Residual over the largest ledger magnitude (floored at 1 nJ).
  double conservation_relative_error() const;
};

struct ScriptProgress {
  std::size_t step = 0;
  TimePoint step_started;
};

struct SimState {
  TimePoint now;
  PmicMode mode = PmicMode::deep_sleep();
  WakeOrchestrator wake;
  StorageElement storage;
  std::optional<ScriptProgress> script;  // active load step
  bool clear_pending = false;            // script finished, McuClearLatch queued
  Illuminance lux;
  std::set<Event> queue;
  Ledger ledger;
};

/* Event-driven simulator. Net power is piecewise constant between events, so
   storage evolves linearly and threshold crossings are solved in closed form. */
class Engine {
 public:
  explicit Engine(Scenario scenario);

  const SimState& state() const { return st_; }
  const Scenario& scenario() const { return sc_; }

  /// Integrates to t. Throws std::logic_error if a queued event lies strictly
  /// before t or t is in the past.
  void advance_to(TimePoint t);

  enum class Direction {
    Rising,        // v >= target
    FallingBelow,  // v < target
    FallingTo,     // v <= target
  };
  /// Earliest instant the stored energy reaches the level where the terminal
  /// voltage satisfies the directional condition; none if the current net
  /// power cannot get there before the next queued event. Domain error if
  /// v_target is outside the OCV range.
  std::optional<TimePoint> find_threshold_crossing(Voltage v_target, Direction dir) const;

  /// Applies an event at the current instant. Throws std::logic_error for
  /// events that cannot occur in the present state.
  void dispatch(const Event& ev);

  /// Pops and processes the queue head. Returns false once SimEnd is handled.
  bool step();

  Report finish();

  /// Storage net power (harvest accepted into storage minus delivered drain).
  Power net_power() const;
  /// Named drains in the present state.
  std::vector<std::pair<std::string, Power>> drains() const;
  Power harvest() const;
  Stage stage() const { return operating_stage(st_.mode.kind(), st_.wake.latch().set); }

 private:
  void schedule(Event ev);
  void cancel(EventKind kind);
  TimePoint next_event_time() const;

  void settle(Voltage v_eval);
  void enter(const PmicMode& next);
  void maybe_start_script();
  void start_step(std::size_t index);
  void abort_script(const std::string& why);
  void reschedule_crossing();
  void open_cycle();
  void close_cycle();
  void record(const std::string& what);
  void anomaly(const std::string& what);

  Scenario sc_;
  SimState st_;
  std::uint64_t seq_ = 0;
  std::map<EventKind, Event> single_;  // at most one outstanding event of these kinds
  std::int64_t next_cycle_ = 1;
  TimePoint end_;
  bool done_ = false;
  bool depleted_ = false;
  std::vector<TraceRecord> trace_;
  std::vector<ModeTransition> transitions_;
  std::vector<CycleSummary> cycles_;
  CycleSummary open_;
  Energy open_consumed_at_start_;
  Energy open_harvested_at_start_;
  std::map<std::string, Energy> open_components_at_start_;
  Energy e_initial_;
  double max_crossing_error_uv_ = 0.0;
};

/// Runs a validated scenario to completion.
Report run(const Scenario& scenario);

/// Initial PMIC mode implied by the stored voltage.
PmicMode initial_mode(const PmicConfig& cfg, Voltage v_store);

}  // namespace hdpm

#endif  // HDPM_ENGINE_HPP
