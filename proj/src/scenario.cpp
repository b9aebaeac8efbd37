/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hdpm {

ScenarioError::ScenarioError(std::string field, int line, const std::string& msg)
    : std::runtime_error(line > 0 ? field + " (line " + std::to_string(line) + "): " + msg : field + ": " + msg),
      field_(std::move(field)),
      line_(line) {}

AlwaysOnBudget Scenario::budget() const {
  return AlwaysOnBudget{pmic.i_quiescent, rtc.i_quiescent, touch.i_quiescent, i_extra_leakage, ao_rail_voltage};
}

Current Scenario::idle_current() const {
  return dpm.kind == DpmVariantKind::HardwareGated ? budget().total() : dpm.i_sleep;
}

Power Scenario::idle_power() const { return power_of(ao_rail_voltage, idle_current()); }

StorageElement Scenario::make_storage() const {
  return StorageElement(storage.capacity_mah, storage.nominal_voltage, storage.ocv, storage.initial_soc);
}

Duration Scenario::cycle_duration() const {
  if (rtc.rearm == RtcRearm::OnClear) return rtc.alarm_period + load_script.total_duration();
  return rtc.alarm_period;
}

void Scenario::validate() const {
  auto wrap = [](const std::function<void()>& f, const std::string& fallback_field) {
    try {
      f();
    } catch (const std::invalid_argument& e) {
      std::string msg = e.what();
      auto colon = msg.find(':');
      std::string field = colon == std::string::npos ? fallback_field : msg.substr(0, colon);
      throw ScenarioError(field, 0, colon == std::string::npos ? msg : msg.substr(colon + 2));
    }
  };
  if (schema_version != kSchemaVersion)
    throw ScenarioError("schema_version", 0, "unsupported version " + std::to_string(schema_version));
  if (name.empty()) throw ScenarioError("meta.name", 0, "must not be empty");
  wrap([&] { (void)make_storage(); }, "storage");
  wrap([&] { pmic.validate(storage.ocv.empty(), storage.ocv.full()); }, "pmic");
  wrap([&] { load_script.validate(); }, "load_script");
  if (i_extra_leakage.na < 0) throw ScenarioError("always_on.i_extra_leakage", 0, "must be non-negative");
  if (ao_rail_voltage.uv <= 0) throw ScenarioError("always_on.rail_voltage", 0, "must be positive");
  if (always_on_measured && always_on_measured->nj < 0)
    throw ScenarioError("always_on.measured_per_cycle", 0, "must be non-negative");
  if (rtc.alarm_period.count() <= 0) throw ScenarioError("rtc.alarm_period", 0, "must be positive");
  if (rtc.i_quiescent.na < 0) throw ScenarioError("rtc.i_quiescent", 0, "must be non-negative");
  if (touch.i_quiescent.na < 0) throw ScenarioError("touch.i_quiescent", 0, "must be non-negative");
  for (std::size_t i = 1; i < touch.press_times.size(); ++i)
    if (!(touch.press_times[i - 1] < touch.press_times[i]))
      throw ScenarioError("touch.presses", 0, "press times must be strictly increasing");
  if (harvester.points().empty()) throw ScenarioError("harvester.calibration", 0, "missing");
  if (light.empty() || light.front().time.count() != 0)
    throw ScenarioError("light", 0, "timeline must start at t=0");
  for (std::size_t i = 0; i < light.size(); ++i) {
    if (!(light[i].lux.lux >= 0.0)) throw ScenarioError("light", 0, "illuminance must be non-negative");
    if (i > 0 && !(light[i - 1].time < light[i].time))
      throw ScenarioError("light", 0, "times must be strictly increasing");
  }
  if (dpm.i_sleep.na < 0) throw ScenarioError("dpm.i_sleep", 0, "must be non-negative");
  if (duration.count() < 0) throw ScenarioError("sim.duration", 0, "must be non-negative");
}

bool Scenario::same_configuration(const Scenario& o) const { return scenario_fields(*this) == scenario_fields(o); }

Scenario case_study_scenario() {
  Scenario s;
  s.name = "case_study";
  s.description = "Wearable thermal-comfort node: 10-minute RTC wake, BME680 read, MCU compute, BLE advertising";
  s.pmic.v_chrdy = Voltage::millivolts(3600);
  s.pmic.v_ovch = Voltage::millivolts(4100);
  s.pmic.v_ovch_hysteresis = Voltage::millivolts(50);
  s.storage.initial_soc = 0.8;
  s.always_on_measured = Energy::millijoules(0.6);
  s.rtc.alarm_period = Duration::min(10);
  s.rtc.first_alarm = TimePoint::zero();
  s.rtc.rearm = RtcRearm::OnClear;
  Duration period = Duration::ms(603535);
  s.harvester = HarvesterModel({{{200.0}, average_power(Energy::millijoules(26.04), period)},
                                {{300.0}, average_power(Energy::millijoules(38.2), period)},
                                {{500.0}, average_power(Energy::millijoules(72.42), period)}},
                               Voltage::millivolts(1200));
  s.light = {{TimePoint::zero(), {200.0}}};
  s.load_script = LoadScript::thermal_comfort();
  s.duration = period * 10;
  return s;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

class Parser {
 public:
  explicit Parser(const YAML::Node& root) : root_(root) {}

  Scenario run();

 private:
  [[noreturn]] void fail(const std::string& field, const YAML::Node& n, const std::string& msg) {
    throw ScenarioError(field, n ? line_of(n) : 0, msg);
  }

  void check_map(const YAML::Node& n, const std::string& path, const std::set<std::string>& allowed) {
    if (!n.IsMap()) fail(path, n, "expected a mapping");
    for (const auto& kv : n) {
      auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, kv.first, "unknown field");
      lines_[path.empty() ? key : path + "." + key] = line_of(kv.first);
    }
  }

  std::string scalar(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) fail(field, n, "expected a scalar");
    return n.Scalar();
  }

  template <class T, class F>
  T field(const YAML::Node& sec, const std::string& sec_name, const std::string& key, T def, F parse,
          bool flagged = false) {
    std::string path = sec_name + "." + key;
    if (!sec || !sec[key]) {
      s_.notes.push_back(std::string(flagged ? "WARNING: " : "") + path + " not given; using default");
      return def;
    }
    YAML::Node n = sec[key];
    try {
      return parse(scalar(n, path));
    } catch (const std::invalid_argument& e) {
      fail(path, n, e.what());
    }
  }

  double number(const std::string& text, const std::string& path, const YAML::Node& n) {
    try {
      std::size_t pos = 0;
      double v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      fail(path, n, "expected a plain number, got '" + text + "'");
    }
  }

  YAML::Node section(const std::string& name, const std::set<std::string>& allowed) {
    YAML::Node n = root_[name];
    if (n) check_map(n, name, allowed);
    return n;
  }

  const YAML::Node& root_;
  Scenario s_;
  std::map<std::string, int> lines_;
};

Scenario Parser::run() {
  check_map(root_, "", {"schema_version", "meta", "pmic", "storage", "always_on", "rtc", "touch", "harvester", "light",
                        "load_script", "dpm", "sim"});
  Scenario defaults;

  YAML::Node ver = root_["schema_version"];
  if (!ver) fail("schema_version", root_, "required field missing");
  s_.schema_version = static_cast<int>(number(scalar(ver, "schema_version"), "schema_version", ver));
  if (s_.schema_version != kSchemaVersion)
    fail("schema_version", ver, "unsupported version " + scalar(ver, "schema_version"));

  auto meta = section("meta", {"name", "description"});
  if (!meta || !meta["name"]) fail("meta.name", meta ? meta : root_, "required field missing");
  s_.name = scalar(meta["name"], "meta.name");
  s_.description = meta["description"] ? scalar(meta["description"], "meta.description") : "";

  auto pm = section("pmic", {"v_cold_start", "p_cold_start", "v_chrdy", "v_ovch", "v_ovch_hysteresis", "grace_window",
                             "i_quiescent"});
  s_.pmic.v_cold_start = field(pm, "pmic", "v_cold_start", defaults.pmic.v_cold_start, parse_voltage);
  s_.pmic.p_cold_start = field(pm, "pmic", "p_cold_start", defaults.pmic.p_cold_start, parse_power);
  s_.pmic.v_chrdy = field(pm, "pmic", "v_chrdy", defaults.pmic.v_chrdy, parse_voltage, true);
  s_.pmic.v_ovch = field(pm, "pmic", "v_ovch", defaults.pmic.v_ovch, parse_voltage, true);
  s_.pmic.v_ovch_hysteresis =
      field(pm, "pmic", "v_ovch_hysteresis", defaults.pmic.v_ovch_hysteresis, parse_voltage, true);
  s_.pmic.grace_window = field(pm, "pmic", "grace_window", defaults.pmic.grace_window, parse_duration);
  s_.pmic.i_quiescent = field(pm, "pmic", "i_quiescent", defaults.pmic.i_quiescent, parse_current);

  auto st = section("storage", {"capacity", "nominal_voltage", "initial_soc", "ocv"});
  s_.storage.capacity_mah = field(st, "storage", "capacity", defaults.storage.capacity_mah, parse_charge_mah);
  s_.storage.nominal_voltage =
      field(st, "storage", "nominal_voltage", defaults.storage.nominal_voltage, parse_voltage);
  if (st && st["initial_soc"]) {
    s_.storage.initial_soc = number(scalar(st["initial_soc"], "storage.initial_soc"), "storage.initial_soc", st["initial_soc"]);
  } else {
    s_.notes.push_back("storage.initial_soc not given; using default");
  }
  if (st && st["ocv"]) {
    YAML::Node ocv = st["ocv"];
    if (!ocv.IsSequence()) fail("storage.ocv", ocv, "expected a list of [soc, voltage] pairs");
    std::vector<OcvPoint> pts;
    for (const auto& p : ocv) {
      if (!p.IsSequence() || p.size() != 2) fail("storage.ocv", p, "expected [soc, voltage]");
      double soc = number(scalar(p[0], "storage.ocv"), "storage.ocv", p[0]);
      try {
        pts.push_back({soc, parse_voltage(scalar(p[1], "storage.ocv"))});
      } catch (const std::invalid_argument& e) {
        fail("storage.ocv", p[1], e.what());
      }
    }
    try {
      s_.storage.ocv = OcvCurve(std::move(pts));
    } catch (const std::invalid_argument& e) {
      fail("storage.ocv", ocv, e.what());
    }
  } else {
    s_.notes.push_back("WARNING: storage.ocv not given; using the generic li-ion default curve");
  }

  auto ao = section("always_on", {"i_extra_leakage", "rail_voltage", "measured_per_cycle"});
  s_.i_extra_leakage = field(ao, "always_on", "i_extra_leakage", defaults.i_extra_leakage, parse_current);
  s_.ao_rail_voltage = field(ao, "always_on", "rail_voltage", defaults.ao_rail_voltage, parse_voltage);
  if (ao && ao["measured_per_cycle"]) {
    try {
      s_.always_on_measured = parse_energy(scalar(ao["measured_per_cycle"], "always_on.measured_per_cycle"));
    } catch (const std::invalid_argument& e) {
      fail("always_on.measured_per_cycle", ao["measured_per_cycle"], e.what());
    }
  }

  auto rtc = section("rtc", {"alarm_period", "first_alarm", "i_quiescent", "rearm"});
  s_.rtc.alarm_period = field(rtc, "rtc", "alarm_period", defaults.rtc.alarm_period, parse_duration);
  s_.rtc.first_alarm = TimePoint::at(
      field(rtc, "rtc", "first_alarm", defaults.rtc.first_alarm.since_start(), parse_duration));
  s_.rtc.i_quiescent = field(rtc, "rtc", "i_quiescent", defaults.rtc.i_quiescent, parse_current);
  s_.rtc.rearm = field(rtc, "rtc", "rearm", defaults.rtc.rearm, [](const std::string& v) {
    if (v == "free_running") return RtcRearm::FreeRunning;
    if (v == "on_clear") return RtcRearm::OnClear;
    throw std::invalid_argument("expected free_running or on_clear");
  });

  auto touch = section("touch", {"i_quiescent", "presses"});
  s_.touch.i_quiescent = field(touch, "touch", "i_quiescent", defaults.touch.i_quiescent, parse_current);
  if (touch && touch["presses"]) {
    YAML::Node pr = touch["presses"];
    if (!pr.IsSequence()) fail("touch.presses", pr, "expected a list of times");
    for (const auto& p : pr) {
      try {
        s_.touch.press_times.push_back(TimePoint::at(parse_duration(scalar(p, "touch.presses"))));
      } catch (const std::exception& e) {
        fail("touch.presses", p, e.what());
      }
    }
  }

  auto hv = section("harvester", {"v_lit", "reference_period", "calibration"});
  Voltage v_lit = field(hv, "harvester", "v_lit", Voltage::millivolts(1200), parse_voltage);
  if (hv && hv["calibration"]) {
    YAML::Node cal = hv["calibration"];
    if (!cal.IsSequence()) fail("harvester.calibration", cal, "expected a list");
    std::optional<Duration> ref;
    if (hv["reference_period"]) {
      try {
        ref = parse_duration(scalar(hv["reference_period"], "harvester.reference_period"));
      } catch (const std::invalid_argument& e) {
        fail("harvester.reference_period", hv["reference_period"], e.what());
      }
    }
    std::vector<CalibrationPoint> pts;
    for (const auto& p : cal) {
      check_map(p, "harvester.calibration", {"lux", "power", "energy"});
      if (!p["lux"]) fail("harvester.calibration.lux", p, "required field missing");
      try {
        Illuminance lux = parse_illuminance(scalar(p["lux"], "harvester.calibration.lux"));
        if (p["power"] && p["energy"]) fail("harvester.calibration", p, "give either power or energy, not both");
        if (p["power"]) {
          pts.push_back({lux, parse_power(scalar(p["power"], "harvester.calibration.power"))});
        } else if (p["energy"]) {
          if (!ref) fail("harvester.reference_period", p, "required when calibration is given as energy");
          pts.push_back({lux, average_power(parse_energy(scalar(p["energy"], "harvester.calibration.energy")), *ref)});
        } else {
          fail("harvester.calibration", p, "each point needs power or energy");
        }
      } catch (const std::invalid_argument& e) {
        fail("harvester.calibration", p, e.what());
      } catch (const std::domain_error& e) {
        fail("harvester.reference_period", p, e.what());
      }
    }
    try {
      s_.harvester = HarvesterModel(std::move(pts), v_lit);
    } catch (const std::invalid_argument& e) {
      fail("harvester.calibration", cal, e.what());
    }
  } else {
    s_.notes.push_back("harvester.calibration not given; using the case-study PV calibration");
    s_.harvester = HarvesterModel(case_study_scenario().harvester.points(), v_lit);
  }

  if (YAML::Node light = root_["light"]) {
    if (!light.IsSequence()) fail("light", light, "expected a list of [time, lux] pairs");
    for (const auto& p : light) {
      if (!p.IsSequence() || p.size() != 2) fail("light", p, "expected [time, lux]");
      try {
        s_.light.push_back({TimePoint::at(parse_duration(scalar(p[0], "light"))), parse_illuminance(scalar(p[1], "light"))});
      } catch (const std::exception& e) {
        fail("light", p, e.what());
      }
    }
    lines_["light"] = line_of(light);
  } else {
    s_.notes.push_back("light not given; using constant 0 lux");
    s_.light = {{TimePoint::zero(), {0.0}}};
  }

  if (YAML::Node ls = root_["load_script"]) {
    if (!ls.IsSequence()) fail("load_script", ls, "expected a list of steps");
    for (const auto& p : ls) {
      check_map(p, "load_script", {"name", "duration", "energy", "rail"});
      LoadStep step;
      if (!p["name"] || !p["duration"] || !p["energy"]) fail("load_script", p, "each step needs name, duration, energy");
      step.name = scalar(p["name"], "load_script.name");
      try {
        step.duration = parse_duration(scalar(p["duration"], "load_script.duration"));
        step.energy = parse_energy(scalar(p["energy"], "load_script.energy"));
      } catch (const std::invalid_argument& e) {
        fail("load_script." + step.name, p, e.what());
      }
      if (p["rail"]) {
        auto r = scalar(p["rail"], "load_script.rail");
        if (r == "LV") step.rail = Rail::LV;
        else if (r == "HV") step.rail = Rail::HV;
        else fail("load_script.rail", p["rail"], "expected LV or HV");
      }
      s_.load_script.steps.push_back(std::move(step));
    }
    lines_["load_script"] = line_of(ls);
  } else {
    s_.notes.push_back("load_script not given; no load runs on wake");
  }

  auto dpm = section("dpm", {"variant", "i_sleep"});
  s_.dpm.kind = field(dpm, "dpm", "variant", defaults.dpm.kind, [](const std::string& v) {
    if (v == "hardware") return DpmVariantKind::HardwareGated;
    if (v == "software") return DpmVariantKind::SoftwareSleep;
    throw std::invalid_argument("expected hardware or software");
  });
  s_.dpm.i_sleep = field(dpm, "dpm", "i_sleep", defaults.dpm.i_sleep, parse_current);

  auto sim = section("sim", {"duration"});
  s_.duration = field(sim, "sim", "duration", defaults.duration, parse_duration);

  try {
    s_.validate();
  } catch (const ScenarioError& e) {
    auto it = lines_.find(e.field());
    std::string msg = e.what();
    auto pos = msg.find(": ");
    throw ScenarioError(e.field(), it == lines_.end() ? 0 : it->second,
                        pos == std::string::npos ? msg : msg.substr(pos + 2));
  }
  return std::move(s_);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ScenarioError("document", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
  if (!root || root.IsNull()) throw ScenarioError("document", 0, "empty scenario");
  try {
    return Parser(root).run();
  } catch (const YAML::Exception& e) {
    throw ScenarioError("document", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open scenario file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------
// Canonical form

std::vector<std::pair<std::string, std::string>> scenario_fields(const Scenario& s) {
  std::vector<std::pair<std::string, std::string>> f;
  auto add = [&](std::string k, std::string v) { f.emplace_back(std::move(k), std::move(v)); };
  add("schema_version", std::to_string(s.schema_version));
  add("meta.name", s.name);
  add("meta.description", s.description);
  add("pmic.v_cold_start", format_voltage(s.pmic.v_cold_start));
  add("pmic.p_cold_start", format_power(s.pmic.p_cold_start));
  add("pmic.v_chrdy", format_voltage(s.pmic.v_chrdy));
  add("pmic.v_ovch", format_voltage(s.pmic.v_ovch));
  add("pmic.v_ovch_hysteresis", format_voltage(s.pmic.v_ovch_hysteresis));
  add("pmic.grace_window", format_duration(s.pmic.grace_window));
  add("pmic.i_quiescent", format_current(s.pmic.i_quiescent));
  add("storage.capacity", format_double(s.storage.capacity_mah) + "mAh");
  add("storage.nominal_voltage", format_voltage(s.storage.nominal_voltage));
  add("storage.initial_soc", format_double(s.storage.initial_soc));
  for (std::size_t i = 0; i < s.storage.ocv.points().size(); ++i) {
    const auto& p = s.storage.ocv.points()[i];
    add("storage.ocv[" + std::to_string(i) + "]", "[" + format_double(p.soc) + ", " + format_voltage(p.v) + "]");
  }
  add("always_on.i_extra_leakage", format_current(s.i_extra_leakage));
  add("always_on.rail_voltage", format_voltage(s.ao_rail_voltage));
  if (s.always_on_measured) add("always_on.measured_per_cycle", format_energy(*s.always_on_measured));
  add("rtc.alarm_period", format_duration(s.rtc.alarm_period));
  add("rtc.first_alarm", format_duration(s.rtc.first_alarm.since_start()));
  add("rtc.i_quiescent", format_current(s.rtc.i_quiescent));
  add("rtc.rearm", std::string(rtc_rearm_name(s.rtc.rearm)));
  add("touch.i_quiescent", format_current(s.touch.i_quiescent));
  for (std::size_t i = 0; i < s.touch.press_times.size(); ++i)
    add("touch.presses[" + std::to_string(i) + "]", format_duration(s.touch.press_times[i].since_start()));
  add("harvester.v_lit", format_voltage(s.harvester.v_lit()));
  for (std::size_t i = 0; i < s.harvester.points().size(); ++i) {
    const auto& p = s.harvester.points()[i];
    add("harvester.calibration[" + std::to_string(i) + "]",
        "{lux: " + format_double(p.lux.lux) + ", power: " + format_power(p.power) + "}");
  }
  for (std::size_t i = 0; i < s.light.size(); ++i)
    add("light[" + std::to_string(i) + "]",
        "[" + format_duration(s.light[i].time.since_start()) + ", " + format_double(s.light[i].lux.lux) + "lux]");
  for (std::size_t i = 0; i < s.load_script.steps.size(); ++i) {
    const auto& st = s.load_script.steps[i];
    add("load_script[" + std::to_string(i) + "]",
        "{name: " + st.name + ", duration: " + format_duration(st.duration) + ", energy: " + format_energy(st.energy) +
            ", rail: " + (st.rail == Rail::LV ? "LV" : "HV") + "}");
  }
  add("dpm.variant", s.dpm.kind == DpmVariantKind::HardwareGated ? "hardware" : "software");
  add("dpm.i_sleep", format_current(s.dpm.i_sleep));
  add("sim.duration", format_duration(s.duration));
  return f;
}

std::string emit_scenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << s.schema_version;
  out << YAML::Key << "meta" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "description" << YAML::Value << s.description;
  out << YAML::EndMap;

  out << YAML::Key << "pmic" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "v_cold_start" << YAML::Value << format_voltage(s.pmic.v_cold_start);
  out << YAML::Key << "p_cold_start" << YAML::Value << format_power(s.pmic.p_cold_start);
  out << YAML::Key << "v_chrdy" << YAML::Value << format_voltage(s.pmic.v_chrdy);
  out << YAML::Key << "v_ovch" << YAML::Value << format_voltage(s.pmic.v_ovch);
  out << YAML::Key << "v_ovch_hysteresis" << YAML::Value << format_voltage(s.pmic.v_ovch_hysteresis);
  out << YAML::Key << "grace_window" << YAML::Value << format_duration(s.pmic.grace_window);
  out << YAML::Key << "i_quiescent" << YAML::Value << format_current(s.pmic.i_quiescent);
  out << YAML::EndMap;

  out << YAML::Key << "storage" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "capacity" << YAML::Value << format_double(s.storage.capacity_mah) + "mAh";
  out << YAML::Key << "nominal_voltage" << YAML::Value << format_voltage(s.storage.nominal_voltage);
  out << YAML::Key << "initial_soc" << YAML::Value << format_double(s.storage.initial_soc);
  out << YAML::Key << "ocv" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : s.storage.ocv.points())
    out << YAML::Flow << YAML::BeginSeq << format_double(p.soc) << format_voltage(p.v) << YAML::EndSeq;
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "always_on" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "i_extra_leakage" << YAML::Value << format_current(s.i_extra_leakage);
  out << YAML::Key << "rail_voltage" << YAML::Value << format_voltage(s.ao_rail_voltage);
  if (s.always_on_measured)
    out << YAML::Key << "measured_per_cycle" << YAML::Value << format_energy(*s.always_on_measured);
  out << YAML::EndMap;

  out << YAML::Key << "rtc" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "alarm_period" << YAML::Value << format_duration(s.rtc.alarm_period);
  out << YAML::Key << "first_alarm" << YAML::Value << format_duration(s.rtc.first_alarm.since_start());
  out << YAML::Key << "i_quiescent" << YAML::Value << format_current(s.rtc.i_quiescent);
  out << YAML::Key << "rearm" << YAML::Value << std::string(rtc_rearm_name(s.rtc.rearm));
  out << YAML::EndMap;

  out << YAML::Key << "touch" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "i_quiescent" << YAML::Value << format_current(s.touch.i_quiescent);
  out << YAML::Key << "presses" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto t : s.touch.press_times) out << format_duration(t.since_start());
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "harvester" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "v_lit" << YAML::Value << format_voltage(s.harvester.v_lit());
  out << YAML::Key << "calibration" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : s.harvester.points()) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "lux" << YAML::Value << format_double(p.lux.lux) << YAML::Key
        << "power" << YAML::Value << format_power(p.power) << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "light" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : s.light)
    out << YAML::Flow << YAML::BeginSeq << format_duration(p.time.since_start()) << format_double(p.lux.lux) + "lux"
        << YAML::EndSeq;
  out << YAML::EndSeq;

  out << YAML::Key << "load_script" << YAML::Value << YAML::BeginSeq;
  for (const auto& st : s.load_script.steps) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << st.name;
    out << YAML::Key << "duration" << YAML::Value << format_duration(st.duration);
    out << YAML::Key << "energy" << YAML::Value << format_energy(st.energy);
    out << YAML::Key << "rail" << YAML::Value << (st.rail == Rail::LV ? "LV" : "HV");
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "dpm" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "variant" << YAML::Value
      << (s.dpm.kind == DpmVariantKind::HardwareGated ? "hardware" : "software");
  out << YAML::Key << "i_sleep" << YAML::Value << format_current(s.dpm.i_sleep);
  out << YAML::EndMap;

  out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "duration" << YAML::Value << format_duration(s.duration);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace hdpm
