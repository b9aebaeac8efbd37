/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_REPORT_HPP
#define HDPM_REPORT_HPP

#include <string>
#include <string_view>

#include "hdpm/engine.hpp"

namespace hdpm {

enum class ReportFormat { Csv, Json, Text };

/// Throws std::invalid_argument for anything but csv, json or text.
ReportFormat parse_report_format(std::string_view name);

/// CSV columns: cycle,start_us,consumed_nJ,harvested_nJ,net_nJ,end_soc.
std::string emit_report(const Report& report, ReportFormat format);

/// One line per dispatched event: time_us,event_kind,mode,latch,v_store_uV,e_store_nJ.
std::string emit_trace(const Report& report);

/* Per-event energy for one mean cycle, as in a measured energy table. */
struct CycleBreakdownRow {
  std::string event;
  std::string duration;
  Energy energy;
};

/// Mean over cycles whose load script completed; empty when there are none.
std::vector<CycleBreakdownRow> cycle_breakdown(const Report& report);

}  // namespace hdpm

#endif  // HDPM_REPORT_HPP
