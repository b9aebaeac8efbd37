/*
 * Copyright (c) 2026 hdpm contributors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef HDPM_FIXED_STEP_HPP
#define HDPM_FIXED_STEP_HPP

#include "hdpm/engine.hpp"

namespace hdpm {

/// Brute-force cross-check of the event engine: integrates with a fixed time
/// step and re-evaluates every mode guard on the stored voltage after each
/// step. Shares only the pure mode, latch and energy functions with the
/// engine; scripted events falling between grid points take effect at the
/// next grid point.
Report run_fixed_step(const Scenario& scenario, Duration step = Duration::ms(1));

}  // namespace hdpm

#endif  // HDPM_FIXED_STEP_HPP
