/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_H
#define HDPM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HDPM_API __declspec(dllexport)
#else
#define HDPM_API __attribute__((visibility("default")))
#endif

typedef enum hdpm_status {
  HDPM_OK = 0,
  HDPM_ERR_VALIDATION = 1, /* scenario parse or invariant failure */
  HDPM_ERR_LOGIC = 2,      /* impossible event sequence during a run */
  HDPM_ERR_DOMAIN = 3,
  HDPM_ERR_IO = 4,
  HDPM_ERR_INVALID_ARG = 5,
  HDPM_ERR_MISMATCH = 6, /* compare: scenarios differ outside dpm */
  HDPM_ERR_INTERNAL = 7
} hdpm_status;

typedef enum hdpm_format { HDPM_FORMAT_CSV = 0, HDPM_FORMAT_JSON = 1, HDPM_FORMAT_TEXT = 2 } hdpm_format;

typedef struct hdpm_scenario hdpm_scenario;
typedef struct hdpm_report hdpm_report;

/* Message for the last failing call on this thread; never NULL. */
HDPM_API const char* hdpm_last_error(void);
/* Offending field and line of the last validation error, or "" / 0. */
HDPM_API const char* hdpm_last_error_field(void);
HDPM_API int hdpm_last_error_line(void);

HDPM_API hdpm_status hdpm_scenario_parse(const char* text, size_t len, hdpm_scenario** out);
HDPM_API hdpm_status hdpm_scenario_load(const char* path, hdpm_scenario** out);
HDPM_API hdpm_status hdpm_scenario_case_study(hdpm_scenario** out);
HDPM_API void hdpm_scenario_destroy(hdpm_scenario* s);

/* Canonical document. Caller frees with hdpm_string_free. */
HDPM_API hdpm_status hdpm_scenario_emit(const hdpm_scenario* s, char** out);
HDPM_API size_t hdpm_scenario_note_count(const hdpm_scenario* s);
HDPM_API const char* hdpm_scenario_note(const hdpm_scenario* s, size_t i);

/* Overrides for what-if runs. */
HDPM_API hdpm_status hdpm_scenario_set_constant_light(hdpm_scenario* s, double lux);
HDPM_API hdpm_status hdpm_scenario_set_duration_us(hdpm_scenario* s, int64_t us);
HDPM_API int64_t hdpm_scenario_cycle_duration_us(const hdpm_scenario* s);

HDPM_API hdpm_status hdpm_run(const hdpm_scenario* s, hdpm_report** out);
/* Fixed-step integrator; step_us > 0. */
HDPM_API hdpm_status hdpm_run_oracle(const hdpm_scenario* s, int64_t step_us, hdpm_report** out);
HDPM_API void hdpm_report_destroy(hdpm_report* r);

HDPM_API hdpm_status hdpm_report_emit(const hdpm_report* r, hdpm_format format, char** out);
HDPM_API hdpm_status hdpm_report_trace(const hdpm_report* r, char** out);
/* Ledger accessors, nJ. */
HDPM_API double hdpm_report_harvested_nj(const hdpm_report* r);
HDPM_API double hdpm_report_consumed_nj(const hdpm_report* r);
HDPM_API double hdpm_report_discarded_nj(const hdpm_report* r);
HDPM_API double hdpm_report_final_energy_nj(const hdpm_report* r);
HDPM_API double hdpm_report_conservation_residual_nj(const hdpm_report* r);
HDPM_API size_t hdpm_report_transition_count(const hdpm_report* r);
/* Sequence of "<time_us> <from> -> <to>" lines. Caller frees. */
HDPM_API hdpm_status hdpm_report_transitions(const hdpm_report* r, char** out);

HDPM_API hdpm_status hdpm_compare(const hdpm_report* hw, const hdpm_report* sw, double* idle_ratio, char** text);
HDPM_API hdpm_status hdpm_sweep(const hdpm_scenario* s, double lux_lo, double lux_hi, double* breakeven_lux);

/* Unit-suffixed duration such as "1ms" or "10min". */
HDPM_API hdpm_status hdpm_parse_duration_us(const char* text, int64_t* out_us);

HDPM_API void hdpm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HDPM_H */
