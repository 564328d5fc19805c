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

#include "acoustic_channel.hpp"

#include "error.hpp"

#include <cmath>
#include <string>

namespace hydrolink::channel {

void Environment::validate() const
{
    if (!(spreading_k >= 1.0 && spreading_k <= 2.0))
        throw DomainError("spreading_k must lie in [1, 2], got " + std::to_string(spreading_k));
    if (!(shipping_s >= 0.0 && shipping_s <= 1.0))
        throw DomainError("shipping_s must lie in [0, 1], got " + std::to_string(shipping_s));
    if (!(wind_w >= 0.0) || !std::isfinite(wind_w))
        throw DomainError("wind_w must be a finite non-negative speed, got " + std::to_string(wind_w));
}

void FrequencyGrid::validate() const
{
    if (!std::isfinite(f_min_khz) || !std::isfinite(f_max_khz) || !std::isfinite(step_khz))
        throw ConfigError("frequency grid bounds must be finite");
    if (!(f_min_khz > 0.0 && f_min_khz < f_max_khz))
        throw ConfigError("frequency grid needs 0 < f_min < f_max");
    if (!(step_khz > 0.0))
        throw ConfigError("frequency grid step must be positive");
    if (size() < 10)
        throw ConfigError("frequency grid must contain at least 10 points, has " + std::to_string(size()));
}

std::size_t FrequencyGrid::size() const
{
    if (!(step_khz > 0.0) || !(f_max_khz >= f_min_khz))
        return 0;
    // 1e-9 absorbs binary rounding of (f_max - f_min) / step for decimal steps.
    return static_cast<std::size_t>(std::floor((f_max_khz - f_min_khz) / step_khz + 1e-9)) + 1;
}

std::vector<double> FrequencyGrid::points() const
{
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = at(i);
    return out;
}

double thorp_absorption(double f_khz)
{
    detail::require_positive(f_khz, "frequency");
    const double f2 = f_khz * f_khz;
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double path_loss_db(double distance_m, double f_khz, const Environment& env)
{
    if (!std::isfinite(distance_m) || distance_m < 1.0)
        throw DomainError("distance must be at least the 1 m reference distance, got " + std::to_string(distance_m));
    return env.spreading_k * 10.0 * std::log10(distance_m) + (distance_m / 1000.0) * thorp_absorption(f_khz);
}

NoiseComponents noise_components_db(double f_khz, const Environment& env)
{
    detail::require_positive(f_khz, "frequency");
    const double lf = std::log10(f_khz);
    return {
        17.0 - 30.0 * lf,
        40.0 + 20.0 * (env.shipping_s - 0.5) + 26.0 * lf - 60.0 * std::log10(f_khz + 0.03),
        50.0 + 7.5 * std::sqrt(env.wind_w) + 20.0 * lf - 40.0 * std::log10(f_khz + 0.4),
        -15.0 + 20.0 * lf,
    };
}

double noise_psd_db(double f_khz, const Environment& env)
{
    const NoiseComponents c = noise_components_db(f_khz, env);
    const double sum = std::pow(10.0, 0.1 * c.turbulence_db) + std::pow(10.0, 0.1 * c.shipping_db) +
                       std::pow(10.0, 0.1 * c.wind_db) + std::pow(10.0, 0.1 * c.thermal_db);
    return 10.0 * std::log10(sum);
}

double an_product_db(double distance_m, double f_khz, const Environment& env)
{
    return path_loss_db(distance_m, f_khz, env) + noise_psd_db(f_khz, env);
}

namespace {

struct GridScan {
    std::vector<double> an_db;
    std::size_t argmin = 0;
};

GridScan scan(double distance_m, const Environment& env, const FrequencyGrid& grid)
{
    grid.validate();
    GridScan s;
    s.an_db.resize(grid.size());
    for (std::size_t i = 0; i < s.an_db.size(); ++i) {
        s.an_db[i] = an_product_db(distance_m, grid.at(i), env);
        if (s.an_db[i] < s.an_db[s.argmin])
            s.argmin = i;
    }
    return s;
}

} // namespace

double optimal_frequency(double distance_m, const Environment& env, const FrequencyGrid& grid)
{
    return grid.at(scan(distance_m, env, grid).argmin);
}

Band band_3db(double distance_m, const Environment& env, const FrequencyGrid& grid)
{
    const GridScan s = scan(distance_m, env, grid);
    const double limit = s.an_db[s.argmin] + 3.0;
    std::size_t lo = s.argmin;
    std::size_t hi = s.argmin;
    while (lo > 0 && s.an_db[lo - 1] <= limit)
        --lo;
    while (hi + 1 < s.an_db.size() && s.an_db[hi + 1] <= limit)
        ++hi;

    Band b;
    b.f_opt_khz = grid.at(s.argmin);
    b.step_khz = grid.step_khz;
    if (lo == hi) {
        b.narrow = true;
        b.f_lo_khz = b.f_opt_khz - 0.5 * grid.step_khz;
        b.f_hi_khz = b.f_opt_khz + 0.5 * grid.step_khz;
    } else {
        b.f_lo_khz = grid.at(lo);
        b.f_hi_khz = grid.at(hi);
    }
    return b;
}

} // namespace hydrolink::channel
