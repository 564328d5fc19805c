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

#include "link_budget.hpp"

#include "error.hpp"

#include <cmath>
#include <vector>

namespace hydrolink::link {

double trapezoid_integral_hz(std::span<const double> f_khz, std::span<const double> values)
{
    if (f_khz.size() != values.size())
        throw DimensionError("trapezoid: frequency and value counts differ");
    double sum = 0.0;
    for (std::size_t i = 1; i < f_khz.size(); ++i)
        sum += 0.5 * (values[i] + values[i - 1]) * 1e3 * (f_khz[i] - f_khz[i - 1]);
    return sum;
}

double required_source_level(double distance_m, const channel::Environment& env, const channel::Band& band, double snr_db)
{
    detail::require_finite(snr_db, "snr_db");
    if (!(band.step_khz > 0.0) || !(band.f_hi_khz > band.f_lo_khz))
        throw ConfigError("required_source_level: empty band");

    double integral = 0.0;
    if (band.narrow) {
        integral = std::pow(10.0, 0.1 * channel::an_product_db(distance_m, band.f_opt_khz, env)) * 1e3 * band.step_khz;
    } else {
        const auto n = static_cast<std::size_t>(std::llround((band.f_hi_khz - band.f_lo_khz) / band.step_khz)) + 1;
        std::vector<double> f(n);
        std::vector<double> an(n);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = band.f_lo_khz + static_cast<double>(i) * band.step_khz;
            an[i] = std::pow(10.0, 0.1 * channel::an_product_db(distance_m, f[i], env));
        }
        integral = trapezoid_integral_hz(f, an);
    }
    return snr_db + 10.0 * std::log10(integral);
}

double acoustic_power_watts(double source_level_db)
{
    return std::pow(10.0, (source_level_db - kSourceLevelPerWattDb) / 10.0);
}

LinkBudget link_budget(double distance_m, const channel::Environment& env, double snr_db,
                       const channel::FrequencyGrid& grid, double efficiency)
{
    env.validate();
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw DomainError("efficiency must lie in (0, 1]");

    LinkBudget lb;
    lb.band = channel::band_3db(distance_m, env, grid);
    lb.f_opt_khz = lb.band.f_opt_khz;
    lb.bandwidth_hz = lb.band.bandwidth_hz();
    lb.source_level_db = required_source_level(distance_m, env, lb.band, snr_db);
    lb.tx_power_w = acoustic_power_watts(lb.source_level_db) / efficiency;
    lb.bit_rate_bps = lb.bandwidth_hz;
    return lb;
}

} // namespace hydrolink::link
