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

#ifndef HYDROLINK_CORE_RELAY_PLANNER_HPP
#define HYDROLINK_CORE_RELAY_PLANNER_HPP

#include "acoustic_channel.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hydrolink::relay {

/// Linear chain: n relays evenly spaced between source and sink, so every hop
/// covers D/(n+1). Relays store and forward; processing and idle power are zero.
struct ChainScenario {
    double total_distance_m = 100e3;
    int n_relays = 0;
    double packet_bits = 1e4;
    double snr_db = 10.0;
    double rx_power_w = 2.0;
    double sound_speed_mps = 1500.0;
    double efficiency = 1.0;
    channel::Environment env;
    channel::FrequencyGrid grid;

    void validate() const;
    double hop_distance_m() const { return total_distance_m / (n_relays + 1); }
};

struct HopMetrics {
    double t_tx_s = 0.0;      // packet airtime
    double delay_s = 0.0;     // propagation + airtime
    double energy_j = 0.0;    // (tx + rx power) * airtime
    double tx_power_w = 0.0;
    double bit_rate_bps = 0.0;
};

HopMetrics hop_metrics(double hop_distance_m, const ChainScenario& sc);

double chain_delay(const ChainScenario& sc);
double chain_energy(const ChainScenario& sc);

struct RelayRow {
    int n = 0;
    double hop_distance_m = 0.0;
    double end_to_end_delay_s = 0.0;
    double total_energy_j = 0.0;
    double hop_tx_power_w = 0.0;
    double hop_bit_rate_bps = 0.0;
};

struct RelayChainReport {
    double total_distance_m = 0.0;
    std::vector<RelayRow> rows;  // n = 0, 1, ..., n_max

    /// (max - min) / delay(n = 0) over the rows.
    double delay_spread() const;
    /// Relay count with the least total energy; first one on ties.
    int energy_argmin() const;
};

RelayChainReport sweep_relays(ChainScenario sc, int n_max);

struct MidpointComparison {
    double energy_reduction_pct = 0.0;  // 100 (1 - E(1)/E(0))
    double delay_increase_pct = 0.0;    // 100 (T(1) - T(0))/T(0)
};

MidpointComparison midpoint_comparison(ChainScenario sc);

struct RelayThreshold {
    double distance_m = 0.0;  // bracket midpoint
    double below_m = 0.0;     // argmin = 0 here
    double above_m = 0.0;     // argmin >= 1 here
    int argmin_above = 0;
    int iterations = 0;
};

/// Bisection for the distance beyond which relaying starts to save energy.
/// Requires argmin_n E = 0 at d_lo and >= 1 at d_hi.
RelayThreshold relaying_threshold(ChainScenario sc, double d_lo_m, double d_hi_m, int n_max = 50, double tol_m = 1.0);

/// True when the sequence decreases (weakly) and then increases (weakly).
bool is_unimodal_or_monotone(std::span<const double> values);

enum class Medium { em, acoustic, optical, mi };
enum class MediumContext { above_surface, air_sea_boundary, underwater, clear_water_los };

struct MediumSpec {
    Medium medium;
    std::string_view name;
    double propagation_speed_mps;
    int rate_class;  // 1 ~Kb, 2 ~Mb, 3 ~Gb
    std::string_view rate_label;
    double range_limit_m;
    std::string_view range_label;
    std::string_view scenario_tags;
};

std::span<const MediumSpec> medium_table();

struct MediumSelection {
    std::vector<MediumSpec> feasible;  // best rate class first
    std::string reason;                // why the list is empty, else empty
};

MediumSelection select_medium(double distance_m, MediumContext context);

std::string_view to_string(Medium m);
std::string_view to_string(MediumContext c);

} // namespace hydrolink::relay

#endif
