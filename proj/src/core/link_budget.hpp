// SPDX-License-Identifier: Apache-2.0
//
// hydrolink: underwater acoustic link, channel estimation and sea-clutter detection simulator
// Copyright (C) 2026 hydrolink contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYDROLINK_CORE_LINK_BUDGET_HPP
#define HYDROLINK_CORE_LINK_BUDGET_HPP

#include "acoustic_channel.hpp"

#include <span>

namespace hydrolink::link {

/// Source level of an omnidirectional projector radiating 1 W acoustic, dB re uPa @ 1 m.
inline constexpr double kSourceLevelPerWattDb = 170.8;

struct LinkBudget {
    double f_opt_khz = 0.0;
    channel::Band band;
    double bandwidth_hz = 0.0;
    double source_level_db = 0.0;  // dB re uPa @ 1 m
    double tx_power_w = 0.0;       // electrical, after dividing by efficiency
    double bit_rate_bps = 0.0;     // BPSK: 1 bit/s/Hz
};

/// Trapezoid rule over samples at frequencies given in kHz; the integral is in Hz.
double trapezoid_integral_hz(std::span<const double> f_khz, std::span<const double> values);

/// SL = snr + 10 log10( integral over the band of A(l,f) N(f) df ).
/// A single-step (narrow) band integrates the optimum sample over one step.
double required_source_level(double distance_m, const channel::Environment& env, const channel::Band& band, double snr_db);

/// Acoustic power for a source level: 10^((SL - 170.8)/10) W.
double acoustic_power_watts(double source_level_db);

LinkBudget link_budget(double distance_m, const channel::Environment& env, double snr_db,
                       const channel::FrequencyGrid& grid = {}, double efficiency = 1.0);

} // namespace hydrolink::link

#endif
