#include <doctest.h>

#include <cstdlib>
#include <string>

#include "hdpm/hdpm.h"

namespace {

std::string scenario_path(const char* name) {
  const char* dir = std::getenv("HDPM_SCENARIO_DIR");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

std::string take(char* s) {
  std::string r = s ? s : "";
  hdpm_string_free(s);
  return r;
}

}  // namespace

TEST_CASE("bundled scenario through the C API") {
  hdpm_scenario* s = nullptr;
  REQUIRE(hdpm_scenario_load(scenario_path("case_study.scenario").c_str(), &s) == HDPM_OK);
  CHECK(hdpm_scenario_note_count(s) == 0);
  CHECK(hdpm_scenario_cycle_duration_us(s) == 603'535'000);

  hdpm_report* r = nullptr;
  REQUIRE(hdpm_run(s, &r) == HDPM_OK);
  double net = hdpm_report_harvested_nj(r) - hdpm_report_consumed_nj(r);
  CHECK(net / 1e6 == doctest::Approx(238.9364479).epsilon(1e-9));
  CHECK(hdpm_report_discarded_nj(r) == 0.0);
  CHECK(std::abs(hdpm_report_conservation_residual_nj(r)) < 1e-3);
  CHECK(hdpm_report_transition_count(r) == 0);

  char* out = nullptr;
  REQUIRE(hdpm_report_emit(r, HDPM_FORMAT_CSV, &out) == HDPM_OK);
  CHECK(take(out).rfind("cycle,start_us,", 0) == 0);
  REQUIRE(hdpm_report_emit(r, HDPM_FORMAT_JSON, &out) == HDPM_OK);
  CHECK(take(out).find("\"dpm_variant\": \"hardware\"") != std::string::npos);
  REQUIRE(hdpm_report_trace(r, &out) == HDPM_OK);
  CHECK(take(out).rfind("time_us,event_kind,", 0) == 0);
  CHECK(hdpm_report_emit(r, static_cast<hdpm_format>(9), &out) == HDPM_ERR_INVALID_ARG);

  hdpm_report_destroy(r);
  hdpm_scenario_destroy(s);
}

TEST_CASE("validation errors carry field and line") {
  const char text[] = "schema_version: 1\nmeta:\n  name: x\nstorage:\n  capacity: -1mAh\n";
  hdpm_scenario* s = nullptr;
  CHECK(hdpm_scenario_parse(text, sizeof text - 1, &s) == HDPM_ERR_VALIDATION);
  CHECK(s == nullptr);
  CHECK(std::string(hdpm_last_error_field()) == "storage.capacity");
  CHECK(hdpm_last_error_line() == 5);
  CHECK(std::string(hdpm_last_error()).find("storage.capacity") != std::string::npos);

  CHECK(hdpm_scenario_load("/nonexistent/x.scenario", &s) == HDPM_ERR_IO);
}

TEST_CASE("null arguments are rejected") {
  hdpm_scenario* s = nullptr;
  hdpm_report* r = nullptr;
  CHECK(hdpm_scenario_parse(nullptr, 0, &s) == HDPM_ERR_INVALID_ARG);
  CHECK(hdpm_scenario_load(nullptr, &s) == HDPM_ERR_INVALID_ARG);
  CHECK(hdpm_scenario_case_study(nullptr) == HDPM_ERR_INVALID_ARG);
  CHECK(hdpm_run(nullptr, &r) == HDPM_ERR_INVALID_ARG);
  CHECK(hdpm_report_emit(nullptr, HDPM_FORMAT_CSV, nullptr) == HDPM_ERR_INVALID_ARG);
  CHECK(hdpm_parse_duration_us(nullptr, nullptr) == HDPM_ERR_INVALID_ARG);
  hdpm_scenario_destroy(nullptr);
  hdpm_report_destroy(nullptr);
  hdpm_string_free(nullptr);
}

TEST_CASE("scenario edits, oracle and round trip") {
  hdpm_scenario* s = nullptr;
  REQUIRE(hdpm_scenario_case_study(&s) == HDPM_OK);
  REQUIRE(hdpm_scenario_set_duration_us(s, 1'207'070'000) == HDPM_OK);
  CHECK(hdpm_scenario_set_duration_us(s, -1) == HDPM_ERR_VALIDATION);
  CHECK(hdpm_scenario_set_constant_light(s, -5.0) == HDPM_ERR_VALIDATION);
  REQUIRE(hdpm_scenario_set_constant_light(s, 300.0) == HDPM_OK);

  hdpm_report* ev = nullptr;
  hdpm_report* orc = nullptr;
  REQUIRE(hdpm_run(s, &ev) == HDPM_OK);
  REQUIRE(hdpm_run_oracle(s, 1000, &orc) == HDPM_OK);
  CHECK(hdpm_report_final_energy_nj(orc) == doctest::Approx(hdpm_report_final_energy_nj(ev)).epsilon(1e-5));
  CHECK(hdpm_run_oracle(s, 0, &orc) == HDPM_ERR_INVALID_ARG);

  char* text = nullptr;
  REQUIRE(hdpm_scenario_emit(s, &text) == HDPM_OK);
  std::string emitted = take(text);
  hdpm_scenario* back = nullptr;
  REQUIRE(hdpm_scenario_parse(emitted.data(), emitted.size(), &back) == HDPM_OK);
  hdpm_report* again = nullptr;
  REQUIRE(hdpm_run(back, &again) == HDPM_OK);
  CHECK(hdpm_report_final_energy_nj(again) == hdpm_report_final_energy_nj(ev));

  hdpm_report_destroy(again);
  hdpm_scenario_destroy(back);
  hdpm_report_destroy(orc);
  hdpm_report_destroy(ev);
  hdpm_scenario_destroy(s);
}

TEST_CASE("compare and sweep") {
  hdpm_scenario* hw = nullptr;
  hdpm_scenario* sw = nullptr;
  REQUIRE(hdpm_scenario_load(scenario_path("case_study.scenario").c_str(), &hw) == HDPM_OK);
  REQUIRE(hdpm_scenario_load(scenario_path("case_study_software.scenario").c_str(), &sw) == HDPM_OK);
  hdpm_scenario_set_duration_us(hw, hdpm_scenario_cycle_duration_us(hw));
  hdpm_scenario_set_duration_us(sw, hdpm_scenario_cycle_duration_us(sw));
  hdpm_report* rh = nullptr;
  hdpm_report* rs = nullptr;
  REQUIRE(hdpm_run(hw, &rh) == HDPM_OK);
  REQUIRE(hdpm_run(sw, &rs) == HDPM_OK);

  double ratio = 0.0;
  char* text = nullptr;
  REQUIRE(hdpm_compare(rh, rs, &ratio, &text) == HDPM_OK);
  CHECK(ratio == doctest::Approx(3000.0 / 452.0));
  CHECK(!take(text).empty());
  CHECK(hdpm_compare(rh, rs, &ratio, nullptr) == HDPM_OK);

  hdpm_scenario_set_constant_light(sw, 100.0);
  hdpm_report* other = nullptr;
  REQUIRE(hdpm_run(sw, &other) == HDPM_OK);
  CHECK(hdpm_compare(rh, other, &ratio, nullptr) == HDPM_ERR_MISMATCH);
  CHECK(std::string(hdpm_last_error()).find("light") != std::string::npos);

  double lux = 0.0;
  REQUIRE(hdpm_sweep(hw, 1.0, 200.0, &lux) == HDPM_OK);
  CHECK(std::abs(lux - 16.5) < 0.1);
  CHECK(hdpm_sweep(hw, 100.0, 200.0, &lux) == HDPM_ERR_INVALID_ARG);

  hdpm_report_destroy(other);
  hdpm_report_destroy(rs);
  hdpm_report_destroy(rh);
  hdpm_scenario_destroy(sw);
  hdpm_scenario_destroy(hw);
}

TEST_CASE("duration parsing") {
  int64_t us = 0;
  REQUIRE(hdpm_parse_duration_us("603.535s", &us) == HDPM_OK);
  CHECK(us == 603'535'000);
  REQUIRE(hdpm_parse_duration_us("1ms", &us) == HDPM_OK);
  CHECK(us == 1000);
  CHECK(hdpm_parse_duration_us("1.5us", &us) != HDPM_OK);
  CHECK(hdpm_parse_duration_us("10 parsecs", &us) != HDPM_OK);
}
