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

#include "relay_planner.hpp"

#include "error.hpp"
#include "link_budget.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hydrolink::relay {

void ChainScenario::validate() const
{
    env.validate();
    grid.validate();
    if (!std::isfinite(total_distance_m) || total_distance_m < 1.0)
        throw DomainError("total_distance_m must be at least 1 m");
    if (n_relays < 0)
        throw DomainError("n_relays must be non-negative");
    detail::require_positive(packet_bits, "packet_bits");
    detail::require_finite(snr_db, "snr_db");
    if (!std::isfinite(rx_power_w) || rx_power_w < 0.0)
        throw DomainError("rx_power_w must be finite and non-negative");
    detail::require_positive(sound_speed_mps, "sound_speed_mps");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw DomainError("efficiency must lie in (0, 1]");
    if (hop_distance_m() < 1.0)
        throw DomainError("hop distance fell below the 1 m reference distance");
}

HopMetrics hop_metrics(double hop_distance_m, const ChainScenario& sc)
{
    const link::LinkBudget lb = link::link_budget(hop_distance_m, sc.env, sc.snr_db, sc.grid, sc.efficiency);
    HopMetrics h;
    h.tx_power_w = lb.tx_power_w;
    h.bit_rate_bps = lb.bit_rate_bps;
    h.t_tx_s = sc.packet_bits / lb.bit_rate_bps;
    h.delay_s = hop_distance_m / sc.sound_speed_mps + h.t_tx_s;
    h.energy_j = (lb.tx_power_w + sc.rx_power_w) * h.t_tx_s;
    return h;
}

namespace {

RelayRow evaluate(const ChainScenario& sc)
{
    sc.validate();
    const double d = sc.hop_distance_m();
    const HopMetrics h = hop_metrics(d, sc);
    const double hops = sc.n_relays + 1;
    RelayRow row;
    row.n = sc.n_relays;
    row.hop_distance_m = d;
    row.end_to_end_delay_s = sc.total_distance_m / sc.sound_speed_mps + hops * h.t_tx_s;
    row.total_energy_j = hops * h.energy_j;
    row.hop_tx_power_w = h.tx_power_w;
    row.hop_bit_rate_bps = h.bit_rate_bps;
    return row;
}

} // namespace

double chain_delay(const ChainScenario& sc) { return evaluate(sc).end_to_end_delay_s; }

double chain_energy(const ChainScenario& sc) { return evaluate(sc).total_energy_j; }

double RelayChainReport::delay_spread() const
{
    if (rows.empty())
        return 0.0;
    auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(), [](const RelayRow& a, const RelayRow& b) {
        return a.end_to_end_delay_s < b.end_to_end_delay_s;
    });
    return (hi->end_to_end_delay_s - lo->end_to_end_delay_s) / rows.front().end_to_end_delay_s;
}

int RelayChainReport::energy_argmin() const
{
    if (rows.empty())
        return -1;
    auto it = std::min_element(rows.begin(), rows.end(), [](const RelayRow& a, const RelayRow& b) {
        return a.total_energy_j < b.total_energy_j;
    });
    return it->n;
}

RelayChainReport sweep_relays(ChainScenario sc, int n_max)
{
    if (n_max < 0)
        throw DomainError("n_max must be non-negative");
    RelayChainReport report;
    report.total_distance_m = sc.total_distance_m;
    report.rows.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        sc.n_relays = n;
        report.rows.push_back(evaluate(sc));
    }
    return report;
}

MidpointComparison midpoint_comparison(ChainScenario sc)
{
    sc.n_relays = 0;
    const RelayRow direct = evaluate(sc);
    sc.n_relays = 1;
    const RelayRow mid = evaluate(sc);
    return {
        100.0 * (1.0 - mid.total_energy_j / direct.total_energy_j),
        100.0 * (mid.end_to_end_delay_s - direct.end_to_end_delay_s) / direct.end_to_end_delay_s,
    };
}

RelayThreshold relaying_threshold(ChainScenario sc, double d_lo_m, double d_hi_m, int n_max, double tol_m)
{
    if (!(d_lo_m >= 1.0 && d_hi_m > d_lo_m))
        throw DomainError("relaying_threshold: need 1 m <= d_lo < d_hi");
    detail::require_positive(tol_m, "tol_m");

    auto argmin_at = [&](double d) {
        sc.total_distance_m = d;
        return sweep_relays(sc, n_max).energy_argmin();
    };
    if (argmin_at(d_lo_m) != 0)
        throw ConfigError("relaying_threshold: relaying already pays off at the lower bracket");
    int hi_argmin = argmin_at(d_hi_m);
    if (hi_argmin == 0)
        throw ConfigError("relaying_threshold: relaying never pays off inside the bracket");

    RelayThreshold t;
    double lo = d_lo_m;
    double hi = d_hi_m;
    while (hi - lo > tol_m) {
        const double mid = 0.5 * (lo + hi);
        const int a = argmin_at(mid);
        if (a == 0) {
            lo = mid;
        } else {
            hi = mid;
            hi_argmin = a;
        }
        ++t.iterations;
    }
    t.below_m = lo;
    t.above_m = hi;
    t.distance_m = 0.5 * (lo + hi);
    t.argmin_above = hi_argmin;
    return t;
}

bool is_unimodal_or_monotone(std::span<const double> values)
{
    std::size_t i = 1;
    while (i < values.size() && values[i] <= values[i - 1])
        ++i;
    while (i < values.size() && values[i] >= values[i - 1])
        ++i;
    return i >= values.size();
}

namespace {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

constexpr std::array<MediumSpec, 4> kMedia{{
    {Medium::em, "EM", 3.33e7, 2, "~Mb", 10.0, "<=10 m", "shallow water; localized network; cross air/water interface"},
    {Medium::acoustic, "Acoustic", 1500.0, 1, "~Kb", 20e3, "~20 km", "long range; small volume data transmission"},
    {Medium::optical, "Optical", 3.33e7, 3, "~Gb", 100.0, "10-100 m", "clear water; line-of-sight; real-time transmission"},
    {Medium::mi, "MI", 3.33e7, 2, "~Mb", 100.0, "10-100 m", "oil reservoirs; water pipelines"},
}};

} // namespace

std::span<const MediumSpec> medium_table() { return kMedia; }

MediumSelection select_medium(double distance_m, MediumContext context)
{
    detail::require_positive(distance_m, "distance_m");

    MediumSelection sel;
    switch (context) {
    case MediumContext::above_surface:
    case MediumContext::air_sea_boundary:
        // Radio above the surface and across the interface has no underwater range cap.
        sel.feasible.push_back(kMedia[0]);
        sel.feasible.back().range_limit_m = kUnbounded;
        return sel;
    case MediumContext::underwater:
    case MediumContext::clear_water_los:
        break;
    }

    for (const MediumSpec& spec : kMedia) {
        if (spec.medium == Medium::optical && context != MediumContext::clear_water_los)
            continue;
        if (distance_m <= spec.range_limit_m)
            sel.feasible.push_back(spec);
    }
    std::stable_sort(sel.feasible.begin(), sel.feasible.end(),
                     [](const MediumSpec& a, const MediumSpec& b) { return a.rate_class > b.rate_class; });
    if (sel.feasible.empty())
        sel.reason = "no single-link medium reaches " + std::to_string(distance_m) +
                     " m under water (acoustic range ~20 km); split the link with relays";
    return sel;
}

std::string_view to_string(Medium m)
{
    switch (m) {
    case Medium::em: return "EM";
    case Medium::acoustic: return "Acoustic";
    case Medium::optical: return "Optical";
    case Medium::mi: return "MI";
    }
    return "?";
}

std::string_view to_string(MediumContext c)
{
    switch (c) {
    case MediumContext::above_surface: return "above_surface";
    case MediumContext::air_sea_boundary: return "air_sea_boundary";
    case MediumContext::underwater: return "underwater";
    case MediumContext::clear_water_los: return "clear_water_los";
    }
    return "?";
}

} // namespace hydrolink::relay
