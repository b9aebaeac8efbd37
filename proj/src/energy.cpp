/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hdpm {

namespace {

double lerp(double x0, double y0, double x1, double y1, double x) {
  if (x1 == x0) return y1;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

OcvCurve::OcvCurve(std::vector<OcvPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("ocv: need at least two points");
  if (points_.front().soc != 0.0 || points_.back().soc != 1.0)
    throw std::invalid_argument("ocv: curve must span soc 0 to 1");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].soc > points_[i - 1].soc)) throw std::invalid_argument("ocv: soc must be strictly increasing");
    if (points_[i].v < points_[i - 1].v) throw std::invalid_argument("ocv: voltage must be non-decreasing");
  }
  if (points_.front().v.uv < 0) throw std::invalid_argument("ocv: negative voltage");
}

OcvCurve OcvCurve::default_liion() {
  return OcvCurve({{0.0, Voltage::millivolts(2800)}, {0.1, Voltage::millivolts(3600)}, {1.0, Voltage::millivolts(4200)}});
}

double OcvCurve::microvolts_at(double soc) const {
  if (!(soc >= 0.0 && soc <= 1.0)) throw std::domain_error("ocv: soc outside [0, 1]");
  auto hi = std::lower_bound(points_.begin(), points_.end(), soc,
                             [](const OcvPoint& p, double s) { return p.soc < s; });
  if (hi == points_.begin()) return static_cast<double>(hi->v.uv);
  auto lo = hi - 1;
  return lerp(lo->soc, static_cast<double>(lo->v.uv), hi->soc, static_cast<double>(hi->v.uv), soc);
}

double OcvCurve::soc_reaching(Voltage v) const {
  if (v < empty() || v > full()) throw std::domain_error("ocv: target voltage outside curve range");
  if (v <= empty()) return 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& a = points_[i - 1];
    const auto& b = points_[i];
    if (b.v >= v) {
      return lerp(static_cast<double>(a.v.uv), a.soc, static_cast<double>(b.v.uv), b.soc, static_cast<double>(v.uv));
    }
  }
  return 1.0;
}

double OcvCurve::soc_not_exceeding(Voltage v) const {
  if (v < empty() || v > full()) throw std::domain_error("ocv: target voltage outside curve range");
  if (v >= full()) return 1.0;
  for (std::size_t i = points_.size() - 1; i > 0; --i) {
    const auto& a = points_[i - 1];
    const auto& b = points_[i];
    if (a.v <= v) {
      return lerp(static_cast<double>(a.v.uv), a.soc, static_cast<double>(b.v.uv), b.soc, static_cast<double>(v.uv));
    }
  }
  return 0.0;
}

StorageElement::StorageElement(double capacity_mah, Voltage nominal_voltage, OcvCurve curve, double initial_soc)
    : capacity_mah_(capacity_mah), nominal_(nominal_voltage), curve_(std::move(curve)) {
  if (!(capacity_mah > 0.0)) throw std::invalid_argument("storage.capacity: must be positive");
  if (nominal_voltage.uv <= 0) throw std::invalid_argument("storage.nominal_voltage: must be positive");
  if (!(initial_soc >= 0.0 && initial_soc <= 1.0)) throw std::invalid_argument("storage.initial_soc: outside [0, 1]");
  if (curve_.points().empty()) throw std::invalid_argument("storage.ocv: missing curve");
  // mAh -> C is x3.6; C * V -> J.
  e_capacity_ = Energy::joules(capacity_mah * 3.6 * nominal_voltage.volts_f());
  e_store_ = {initial_soc * e_capacity_.nj};
}

namespace {
// Truncates onto the microvolt grid, so v >= n on the grid holds exactly when
// the curve has reached n. The nudge absorbs interpolation round-off at grid
// points.
Voltage to_grid(double uv) { return {static_cast<std::int64_t>(std::floor(uv + 1e-8))}; }
}  // namespace

Voltage StorageElement::v_store() const { return to_grid(curve_.microvolts_at(std::clamp(soc(), 0.0, 1.0))); }

void StorageElement::set_energy(Energy e) {
  if (!(e.nj >= 0.0 && e.nj <= e_capacity_.nj)) throw std::domain_error("storage: energy outside [0, capacity]");
  e_store_ = e;
}

Voltage ocv(const StorageElement& storage, double soc) {
  return to_grid(storage.curve().microvolts_at(soc));
}

ApplyResult apply_net_power(const StorageElement& storage, Power p_net, Duration dt) {
  if (dt.count() < 0) throw std::domain_error("apply_net_power: negative duration");
  ApplyResult r{storage, {}, {}};
  double e = storage.e_store().nj + energy_of(p_net, dt).nj;
  double cap = storage.e_capacity().nj;
  if (e > cap) {
    r.overflow = {e - cap};
    e = cap;
  } else if (e < 0.0) {
    r.underflow = {-e};
    e = 0.0;
  }
  r.storage.set_energy({e});
  return r;
}

HarvesterModel::HarvesterModel(std::vector<CalibrationPoint> points, Voltage v_lit)
    : points_(std::move(points)), v_lit_(v_lit) {
  if (points_.empty()) throw std::invalid_argument("harvester.calibration: need at least one point");
  if (v_lit.uv < 0) throw std::invalid_argument("harvester.v_lit: must be non-negative");
  double prev_lux = 0.0;
  double prev_p = 0.0;
  for (const auto& p : points_) {
    if (!(p.lux.lux > prev_lux)) throw std::invalid_argument("harvester.calibration: lux must be positive and strictly increasing");
    if (p.power.nw < prev_p) throw std::invalid_argument("harvester.calibration: power must be non-decreasing");
    prev_lux = p.lux.lux;
    prev_p = p.power.nw;
  }
}

Power harvest_power(const HarvesterModel& model, Illuminance lux) {
  if (!(lux.lux >= 0.0)) throw std::domain_error("harvest_power: negative illuminance");
  const auto& pts = model.points();
  if (lux.lux == 0.0 || pts.empty()) return {};
  double x0 = 0.0, y0 = 0.0;
  for (const auto& p : pts) {
    if (lux.lux <= p.lux.lux) return {lerp(x0, y0, p.lux.lux, p.power.nw, lux.lux)};
    x0 = p.lux.lux;
    y0 = p.power.nw;
  }
  // Past the last point: extend the final segment.
  double xa = pts.size() >= 2 ? pts[pts.size() - 2].lux.lux : 0.0;
  double ya = pts.size() >= 2 ? pts[pts.size() - 2].power.nw : 0.0;
  return {lerp(xa, ya, pts.back().lux.lux, pts.back().power.nw, lux.lux)};
}

Voltage harvester_voltage(const HarvesterModel& model, Illuminance lux) {
  if (!(lux.lux >= 0.0)) throw std::domain_error("harvester_voltage: negative illuminance");
  return lux.lux > 0.0 ? model.v_lit() : Voltage{};
}

Power always_on_power(const AlwaysOnBudget& budget) { return power_of(budget.rail_voltage, budget.total()); }

Power LoadStep::power() const {
  if (duration.count() <= 0) return {};
  return average_power(energy, duration);
}

LoadScript LoadScript::thermal_comfort() {
  return LoadScript{{
      {"Data acquisition", Duration::ms(1500), Energy::millijoules(1.1), Rail::LV},
      {"MCU", Duration::ms(35), Energy::microjoules(46.2), Rail::LV},
      {"System advertising", Duration::ms(2000), Energy::millijoules(0.4), Rail::HV},
  }};
}

void LoadScript::validate() const {
  for (const auto& s : steps) {
    if (s.duration.count() < 0) throw std::invalid_argument("load_script." + s.name + ".duration: negative");
    if (!(s.energy.nj >= 0.0) || !std::isfinite(s.energy.nj))
      throw std::invalid_argument("load_script." + s.name + ".energy: negative or non-finite");
    if (s.duration.count() == 0 && s.energy.nj > 0.0)
      throw std::invalid_argument("load_script." + s.name + ": energy over a zero duration");
  }
}

Duration LoadScript::total_duration() const {
  Duration d;
  for (const auto& s : steps) d += s.duration;
  return d;
}

Energy LoadScript::total_energy() const {
  Energy e;
  for (const auto& s : steps) e += s.energy;
  return e;
}

Energy cycle_energy(const LoadScript& script, Power idle, Duration sleep) {
  return script.total_energy() + energy_of(idle, sleep + script.total_duration());
}

Energy cycle_energy(const LoadScript& script, const AlwaysOnBudget& budget, Duration sleep) {
  return cycle_energy(script, always_on_power(budget), sleep);
}

Energy cycle_energy_measured(const LoadScript& script, Energy always_on) {
  return script.total_energy() + always_on;
}

Energy net_gain(const HarvesterModel& model, Illuminance lux, Energy cycle, Duration cycle_duration) {
  if (cycle_duration.count() <= 0) throw std::domain_error("net_gain: non-positive cycle duration");
  return energy_of(harvest_power(model, lux), cycle_duration) - cycle;
}

LoadStep mcu_run_step(std::string name, double clock_mhz, Duration duration, Voltage rail, double ua_per_mhz) {
  if (!(clock_mhz >= 0.0) || !(ua_per_mhz >= 0.0)) throw std::domain_error("mcu_run_step: negative clock or current");
  // uA * V * s = uJ
  double uj = ua_per_mhz * clock_mhz * rail.volts_f() * duration.seconds();
  return {std::move(name), duration, Energy::microjoules(uj), Rail::LV};
}

}  // namespace hdpm
