/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hdpm/hdpm.h"

#include <cstdlib>
#include <cstring>
#include <ios>
#include <new>
#include <string>

#include "hdpm/analysis.hpp"
#include "hdpm/fixed_step.hpp"
#include "hdpm/report.hpp"

struct hdpm_scenario {
  hdpm::Scenario s;
};

struct hdpm_report {
  hdpm::Report r;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;
thread_local int g_line = 0;

void set_error(const std::string& msg, std::string field = {}, int line = 0) {
  g_error = msg;
  g_field = std::move(field);
  g_line = line;
}

// Maps the exception raised by f onto a status code.
template <class F>
hdpm_status guarded(F&& f) {
  try {
    set_error("");
    f();
    return HDPM_OK;
  } catch (const hdpm::ScenarioError& e) {
    set_error(e.what(), e.field(), e.line());
    return HDPM_ERR_VALIDATION;
  } catch (const hdpm::MismatchError& e) {
    set_error(e.what());
    return HDPM_ERR_MISMATCH;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error derive from logic_error
    set_error(e.what());
    if (dynamic_cast<const std::invalid_argument*>(&e)) return HDPM_ERR_INVALID_ARG;
    if (dynamic_cast<const std::domain_error*>(&e)) return HDPM_ERR_DOMAIN;
    return HDPM_ERR_LOGIC;
  } catch (const std::ios_base::failure& e) {
    set_error(e.what());
    return HDPM_ERR_IO;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return HDPM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HDPM_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

hdpm_status null_arg(const char* what) {
  set_error(std::string(what) + " is NULL");
  return HDPM_ERR_INVALID_ARG;
}

}  // namespace

extern "C" {

const char* hdpm_last_error(void) { return g_error.c_str(); }
const char* hdpm_last_error_field(void) { return g_field.c_str(); }
int hdpm_last_error_line(void) { return g_line; }

hdpm_status hdpm_scenario_parse(const char* text, size_t len, hdpm_scenario** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new hdpm_scenario{hdpm::parse_scenario(std::string_view(text, len))}; });
}

hdpm_status hdpm_scenario_load(const char* path, hdpm_scenario** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new hdpm_scenario{hdpm::load_scenario_file(path)}; });
}

hdpm_status hdpm_scenario_case_study(hdpm_scenario** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new hdpm_scenario{hdpm::case_study_scenario()}; });
}

void hdpm_scenario_destroy(hdpm_scenario* s) { delete s; }

hdpm_status hdpm_scenario_emit(const hdpm_scenario* s, char** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup(hdpm::emit_scenario(s->s)); });
}

size_t hdpm_scenario_note_count(const hdpm_scenario* s) { return s ? s->s.notes.size() : 0; }

const char* hdpm_scenario_note(const hdpm_scenario* s, size_t i) {
  if (!s || i >= s->s.notes.size()) return nullptr;
  return s->s.notes[i].c_str();
}

hdpm_status hdpm_scenario_set_constant_light(hdpm_scenario* s, double lux) {
  if (!s) return null_arg("scenario");
  return guarded([&] {
    hdpm::Scenario copy = s->s;
    copy.light = {hdpm::LightPoint{hdpm::TimePoint::zero(), hdpm::Illuminance{lux}}};
    copy.validate();
    s->s = std::move(copy);
  });
}

hdpm_status hdpm_scenario_set_duration_us(hdpm_scenario* s, int64_t us) {
  if (!s) return null_arg("scenario");
  return guarded([&] {
    hdpm::Scenario copy = s->s;
    copy.duration = hdpm::Duration::us(us);
    copy.validate();
    s->s = std::move(copy);
  });
}

int64_t hdpm_scenario_cycle_duration_us(const hdpm_scenario* s) { return s ? s->s.cycle_duration().count() : 0; }

hdpm_status hdpm_run(const hdpm_scenario* s, hdpm_report** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new hdpm_report{hdpm::run(s->s)}; });
}

hdpm_status hdpm_run_oracle(const hdpm_scenario* s, int64_t step_us, hdpm_report** out) {
  if (!s) return null_arg("scenario");
  if (!out) return null_arg("out");
  if (step_us <= 0) {
    set_error("oracle time step must be positive");
    return HDPM_ERR_INVALID_ARG;
  }
  return guarded([&] { *out = new hdpm_report{hdpm::run_fixed_step(s->s, hdpm::Duration::us(step_us))}; });
}

void hdpm_report_destroy(hdpm_report* r) { delete r; }

hdpm_status hdpm_report_emit(const hdpm_report* r, hdpm_format format, char** out) {
  if (!r) return null_arg("report");
  if (!out) return null_arg("out");
  return guarded([&] {
    hdpm::ReportFormat f;
    switch (format) {
      case HDPM_FORMAT_CSV: f = hdpm::ReportFormat::Csv; break;
      case HDPM_FORMAT_JSON: f = hdpm::ReportFormat::Json; break;
      case HDPM_FORMAT_TEXT: f = hdpm::ReportFormat::Text; break;
      default: throw std::invalid_argument("unknown report format");
    }
    *out = dup(hdpm::emit_report(r->r, f));
  });
}

hdpm_status hdpm_report_trace(const hdpm_report* r, char** out) {
  if (!r) return null_arg("report");
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup(hdpm::emit_trace(r->r)); });
}

double hdpm_report_harvested_nj(const hdpm_report* r) { return r ? r->r.ledger.e_harvested.nj : 0.0; }
double hdpm_report_consumed_nj(const hdpm_report* r) { return r ? r->r.ledger.total_consumed().nj : 0.0; }
double hdpm_report_discarded_nj(const hdpm_report* r) { return r ? r->r.ledger.e_overcharge_discarded.nj : 0.0; }
double hdpm_report_final_energy_nj(const hdpm_report* r) { return r ? r->r.e_final.nj : 0.0; }
double hdpm_report_conservation_residual_nj(const hdpm_report* r) { return r ? r->r.conservation_residual() : 0.0; }
size_t hdpm_report_transition_count(const hdpm_report* r) { return r ? r->r.transitions.size() : 0; }

hdpm_status hdpm_report_transitions(const hdpm_report* r, char** out) {
  if (!r) return null_arg("report");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::string s;
    for (const auto& t : r->r.transitions)
      s += std::to_string(t.time.count()) + " " + std::string(hdpm::mode_name(t.from)) + " -> " +
           std::string(hdpm::mode_name(t.to)) + "\n";
    *out = dup(s);
  });
}

hdpm_status hdpm_compare(const hdpm_report* hw, const hdpm_report* sw, double* idle_ratio, char** text) {
  if (!hw) return null_arg("hw");
  if (!sw) return null_arg("sw");
  return guarded([&] {
    auto c = hdpm::compare_dpm(hw->r, sw->r);
    if (idle_ratio) *idle_ratio = c.idle_ratio;
    if (text) *text = dup(hdpm::emit_comparison(c));
  });
}

hdpm_status hdpm_sweep(const hdpm_scenario* s, double lux_lo, double lux_hi, double* breakeven_lux) {
  if (!s) return null_arg("scenario");
  if (!breakeven_lux) return null_arg("breakeven_lux");
  return guarded([&] { *breakeven_lux = hdpm::sweep_lux(s->s, hdpm::Illuminance{lux_lo}, hdpm::Illuminance{lux_hi}).lux; });
}

hdpm_status hdpm_parse_duration_us(const char* text, int64_t* out_us) {
  if (!text) return null_arg("text");
  if (!out_us) return null_arg("out_us");
  return guarded([&] { *out_us = hdpm::parse_duration(text).count(); });
}

void hdpm_string_free(char* s) { std::free(s); }

}  // extern "C"
