/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// Command-line front end; talks to the simulator only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "hdpm/hdpm.h"

namespace {

enum Exit { kOk = 0, kValidation = 1, kRuntime = 2 };

struct ScenarioPtr {
  hdpm_scenario* p = nullptr;
  ~ScenarioPtr() { hdpm_scenario_destroy(p); }
};
struct ReportPtr {
  hdpm_report* p = nullptr;
  ~ReportPtr() { hdpm_report_destroy(p); }
};
struct CString {
  char* p = nullptr;
  ~CString() { hdpm_string_free(p); }
};

int fail(hdpm_status st) {
  std::cerr << "error: " << hdpm_last_error() << "\n";
  switch (st) {
    case HDPM_ERR_VALIDATION:
    case HDPM_ERR_IO:
    case HDPM_ERR_INVALID_ARG:
    case HDPM_ERR_MISMATCH:
    case HDPM_ERR_DOMAIN: return kValidation;
    default: return kRuntime;
  }
}

int load(const std::string& path, ScenarioPtr& s) {
  hdpm_status st = hdpm_scenario_load(path.c_str(), &s.p);
  if (st != HDPM_OK) return fail(st);
  for (size_t i = 0; i < hdpm_scenario_note_count(s.p); ++i) std::cerr << "note: " << hdpm_scenario_note(s.p, i) << "\n";
  return kOk;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-stage power-management simulator for PV-harvesting sensor nodes"};
  app.require_subcommand(1);

  std::string file, file_sw, out_path, trace_path, format = "text", timestep = "1ms";
  double lo = 0.0, hi = 0.0;

  auto* run = app.add_subcommand("run", "simulate a scenario");
  run->add_option("file", file, "scenario file")->required();
  run->add_option("--out", out_path, "write the report here instead of stdout");
  run->add_option("--format", format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  run->add_option("--trace", trace_path, "write the event trace here");

  auto* cmp = app.add_subcommand("compare", "hardware-gated vs software-sleep DPM");
  cmp->add_option("hw", file, "hardware-gated scenario")->required();
  cmp->add_option("sw", file_sw, "software-sleep scenario")->required();

  auto* sweep = app.add_subcommand("sweep", "breakeven illuminance by bisection");
  sweep->add_option("file", file, "scenario file")->required();
  sweep->add_option("--lo", lo, "lower lux bound")->required();
  sweep->add_option("--hi", hi, "upper lux bound")->required();

  auto* validate = app.add_subcommand("validate", "parse and check a scenario");
  validate->add_option("file", file, "scenario file")->required();

  auto* oracle = app.add_subcommand("oracle", "fixed-timestep cross-check integrator");
  oracle->add_option("file", file, "scenario file")->required();
  oracle->add_option("--timestep", timestep, "integration step, e.g. 1ms");
  oracle->add_option("--format", format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  auto fmt = format == "csv" ? HDPM_FORMAT_CSV : format == "json" ? HDPM_FORMAT_JSON : HDPM_FORMAT_TEXT;

  ScenarioPtr s;
  if (int rc = load(file, s)) return rc;

  if (*validate) {
    std::cout << file << ": ok\n";
    return kOk;
  }

  if (*run || *oracle) {
    ReportPtr r;
    hdpm_status st;
    if (*run) {
      st = hdpm_run(s.p, &r.p);
    } else {
      int64_t step_us = 0;
      if ((st = hdpm_parse_duration_us(timestep.c_str(), &step_us)) != HDPM_OK) return fail(st);
      st = hdpm_run_oracle(s.p, step_us, &r.p);
    }
    if (st != HDPM_OK) return fail(st);
    CString doc;
    if ((st = hdpm_report_emit(r.p, fmt, &doc.p)) != HDPM_OK) return fail(st);
    if (out_path.empty()) std::cout << doc.p;
    else if (!write_file(out_path, doc.p)) return kRuntime;
    if (!trace_path.empty()) {
      CString tr;
      if ((st = hdpm_report_trace(r.p, &tr.p)) != HDPM_OK) return fail(st);
      if (!write_file(trace_path, tr.p)) return kRuntime;
    }
    return kOk;
  }

  if (*cmp) {
    ScenarioPtr s2;
    if (int rc = load(file_sw, s2)) return rc;
    ReportPtr hw, sw;
    hdpm_status st = hdpm_run(s.p, &hw.p);
    if (st != HDPM_OK) return fail(st);
    if ((st = hdpm_run(s2.p, &sw.p)) != HDPM_OK) return fail(st);
    double ratio = 0.0;
    CString text;
    if ((st = hdpm_compare(hw.p, sw.p, &ratio, &text.p)) != HDPM_OK) return fail(st);
    std::cout << text.p;
    return kOk;
  }

  if (*sweep) {
    double lux = 0.0;
    hdpm_status st = hdpm_sweep(s.p, lo, hi, &lux);
    if (st != HDPM_OK) return fail(st);
    std::printf("breakeven %.2f lux\n", lux);
    return kOk;
  }
  return kOk;
}
