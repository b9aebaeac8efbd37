/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace hdpm {

using nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "' (csv, json, text)");
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool is_always_on(const std::string& name) {
  static const std::set<std::string> kAlwaysOn = {"PMIC", "RTC", "Touch sensor", "Leakage", "MCU stop-mode idle"};
  return kAlwaysOn.count(name) > 0;
}

std::string emit_csv(const Report& r) {
  std::string out = "cycle,start_us,consumed_nJ,harvested_nJ,net_nJ,end_soc\n";
  for (const auto& c : r.cycles) {
    out += std::to_string(c.index) + "," + std::to_string(c.start.count()) + "," + format_double(c.consumed.nj) + "," +
           format_double(c.harvested.nj) + "," + format_double(c.net().nj) + "," + format_double(c.end_soc) + "\n";
  }
  return out;
}

std::string emit_json(const Report& r) {
  ordered_json j;
  j["scenario"] = r.scenario.name;
  j["dpm_variant"] = r.scenario.dpm.kind == DpmVariantKind::HardwareGated ? "hardware" : "software";
  j["notes"] = r.scenario.notes;
  j["duration_us"] = r.end.count();

  ordered_json ledger;
  ledger["e_harvested_nJ"] = r.ledger.e_harvested.nj;
  ordered_json consumed = ordered_json::object();
  for (const auto& [name, e] : r.ledger.e_consumed_by_component) consumed[name] = e.nj;
  ledger["e_consumed_by_component_nJ"] = consumed;
  ledger["e_consumed_total_nJ"] = r.ledger.total_consumed().nj;
  ledger["e_overcharge_discarded_nJ"] = r.ledger.e_overcharge_discarded.nj;
  ordered_json residency = ordered_json::object();
  for (const auto& [mode, d] : r.ledger.time_in_mode) residency[std::string(mode_name(mode))] = d.count();
  ledger["time_in_mode_us"] = residency;
  ledger["cycles_completed"] = r.ledger.cycles_completed;
  ledger["anomalies"] = r.ledger.anomalies;
  j["ledger"] = ledger;

  ordered_json cycles = ordered_json::array();
  for (const auto& c : r.cycles) {
    cycles.push_back({{"cycle", c.index},
                      {"start_us", c.start.count()},
                      {"consumed_nJ", c.consumed.nj},
                      {"harvested_nJ", c.harvested.nj},
                      {"net_nJ", c.net().nj},
                      {"end_soc", c.end_soc}});
  }
  j["cycles"] = cycles;

  j["initial"] = {{"e_store_nJ", r.e_initial.nj}};
  j["final"] = {{"soc", r.final_soc},
                {"v_store_uV", r.final_v.uv},
                {"e_store_nJ", r.e_final.nj},
                {"mode", std::string(mode_name(r.final_mode))}};
  ordered_json transitions = ordered_json::array();
  for (const auto& t : r.transitions)
    transitions.push_back(
        {{"time_us", t.time.count()}, {"from", std::string(mode_name(t.from))}, {"to", std::string(mode_name(t.to))}});
  j["mode_transitions"] = transitions;
  j["conservation_residual_nJ"] = r.conservation_residual();
  return j.dump(2) + "\n";
}

std::string emit_text(const Report& r) {
  std::ostringstream os;
  const auto& sc = r.scenario;
  os << "Scenario: " << sc.name << " ("
     << (sc.dpm.kind == DpmVariantKind::HardwareGated ? "hardware-gated DPM" : "software sleep baseline") << ")\n";
  if (!sc.description.empty()) os << "  " << sc.description << "\n";
  for (const auto& n : sc.notes) os << "  note: " << n << "\n";
  os << "Simulated " << fixed(r.end.seconds(), 3) << " s, " << r.ledger.cycles_completed << " completed cycles\n\n";

  os << "Energy ledger\n";
  os << "  harvested             " << fixed(r.ledger.e_harvested.mj(), 6) << " mJ\n";
  os << "  consumed              " << fixed(r.ledger.total_consumed().mj(), 6) << " mJ\n";
  for (const auto& [name, e] : r.ledger.e_consumed_by_component)
    os << "    " << name << std::string(name.size() < 20 ? 20 - name.size() : 1, ' ') << fixed(e.mj(), 6) << " mJ\n";
  os << "  overcharge discarded  " << fixed(r.ledger.e_overcharge_discarded.mj(), 6) << " mJ\n";
  os << "  change in storage     " << fixed((r.e_final - r.e_initial).mj(), 6) << " mJ\n\n";

  StorageElement probe = sc.make_storage();
  os << "Storage: soc " << fixed(probe.soc(), 6) << " -> " << fixed(r.final_soc, 6) << ", final "
     << fixed(r.final_v.volts_f(), 6) << " V, final mode " << mode_name(r.final_mode) << "\n\n";

  os << "Mode residency\n";
  for (const auto& [mode, d] : r.ledger.time_in_mode) {
    std::string m(mode_name(mode));
    os << "  " << m << std::string(12 - m.size(), ' ') << fixed(d.seconds(), 6) << " s\n";
  }

  auto rows = cycle_breakdown(r);
  if (!rows.empty()) {
    os << "\nEnergy per event (mean cycle)\n";
    os << "  Event                 Duration                  Energy\n";
    for (const auto& row : rows) {
      os << "  " << row.event << std::string(row.event.size() < 22 ? 22 - row.event.size() : 1, ' ') << row.duration
         << std::string(row.duration.size() < 26 ? 26 - row.duration.size() : 1, ' ') << fixed(row.energy.mj(), 6)
         << " mJ\n";
    }
  }

  os << "\nPer cycle\n  cycle  start_s        consumed_mJ   harvested_mJ  net_mJ        end_soc\n";
  for (const auto& c : r.cycles) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-6lld %-14.6f %-13.6f %-13.6f %-13.6f %.6f\n", static_cast<long long>(c.index),
                  c.start.seconds(), c.consumed.mj(), c.harvested.mj(), c.net().mj(), c.end_soc);
    os << buf;
  }
  if (!r.ledger.anomalies.empty()) {
    os << "\nAnomalies\n";
    for (const auto& a : r.ledger.anomalies) os << "  " << a << "\n";
  }
  return os.str();
}

}  // namespace

std::vector<CycleBreakdownRow> cycle_breakdown(const Report& r) {
  std::vector<CycleBreakdownRow> rows;
  std::map<std::string, double> sums;
  double always_on = 0.0;
  double length_us = 0.0;
  int n = 0;
  for (const auto& c : r.cycles) {
    if (!c.script_completed) continue;
    ++n;
    length_us += static_cast<double>(c.length.count());
    for (const auto& [name, e] : c.by_component) {
      if (is_always_on(name)) always_on += e.nj;
      else sums[name] += e.nj;
    }
  }
  if (n == 0) return rows;
  double total = always_on;
  Duration active = r.scenario.load_script.total_duration();
  for (const auto& step : r.scenario.load_script.steps) {
    double e = sums.count(step.name) ? sums[step.name] / n : 0.0;
    total += e * n;
    rows.push_back({step.name, format_duration(step.duration), Energy{e}});
  }
  Duration mean_length = Duration::us(static_cast<std::int64_t>(std::llround(length_us / n)));
  rows.push_back({"Always-on domain", format_duration(mean_length), Energy{always_on / n}});
  rows.push_back({"Total per cycle", format_duration(active) + " + " + format_duration(mean_length - active),
                  Energy{total / n}});
  return rows;
}

std::string emit_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return emit_csv(report);
    case ReportFormat::Json: return emit_json(report);
    case ReportFormat::Text: return emit_text(report);
  }
  return {};
}

std::string emit_trace(const Report& report) {
  std::string out = "time_us,event_kind,mode,latch,v_store_uV,e_store_nJ\n";
  for (const auto& t : report.trace) {
    out += std::to_string(t.time.count()) + "," + t.event + "," + std::string(mode_name(t.mode)) + "," +
           (t.latch ? "1" : "0") + "," + std::to_string(t.v_store.uv) + "," + format_double(t.e_store.nj) + "\n";
  }
  return out;
}

}  // namespace hdpm
